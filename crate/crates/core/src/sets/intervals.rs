//! Compact subsets of the line as finite unions of closed intervals with
//! dyadic endpoints. All operations here are exact.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Sorted, pairwise disjoint, non-touching closed intervals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    intervals: Vec<(Dyadic, Dyadic)>,
}

impl IntervalUnion {
    /// Builds the union of arbitrary closed intervals; overlapping or
    /// touching intervals are merged.
    pub fn new(intervals: impl IntoIterator<Item = (Dyadic, Dyadic)>) -> Result<Self> {
        let mut v: Vec<(Dyadic, Dyadic)> = intervals.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&(a, b)) = v.iter().find(|(a, b)| a > b) {
            return Err(Error::Parse { line: 0, msg: format!("interval [{a}, {b}] is reversed") });
        }
        Ok(Self::merged(&mut v))
    }

    fn merged(v: &mut [(Dyadic, Dyadic)]) -> Self {
        v.sort_unstable();
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(v.len());
        for &(a, b) in v.iter() {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        IntervalUnion { intervals: out }
    }

    pub fn interval(a: Dyadic, b: Dyadic) -> Result<Self> {
        Self::new([(a, b)])
    }

    /// Convenience constructor from float endpoints (exactly converted).
    pub fn from_f64(intervals: &[(f64, f64)]) -> Result<Self> {
        let v = intervals
            .iter()
            .map(|&(a, b)| Ok((Dyadic::from_f64(a)?, Dyadic::from_f64(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    /// Finite set of points, as degenerate intervals.
    pub fn points(points: impl IntoIterator<Item = Dyadic>) -> Result<Self> {
        Self::new(points.into_iter().map(|p| (p, p)))
    }

    pub fn intervals(&self) -> &[(Dyadic, Dyadic)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> Dyadic {
        self.intervals[0].0
    }

    pub fn max(&self) -> Dyadic {
        self.intervals[self.intervals.len() - 1].1
    }

    pub fn is_convex(&self) -> bool {
        self.intervals.len() == 1
    }

    pub fn hull(&self) -> IntervalUnion {
        IntervalUnion { intervals: vec![(self.min(), self.max())] }
    }

    pub fn diameter(&self) -> Dyadic {
        self.max() - self.min()
    }

    /// Lebesgue measure.
    pub fn volume(&self) -> Dyadic {
        self.intervals.iter().fold(Dyadic::ZERO, |acc, &(a, b)| acc + (b - a))
    }

    pub fn contains(&self, x: Dyadic) -> bool {
        let i = self.intervals.partition_point(|&(a, _)| a <= x);
        i > 0 && x <= self.intervals[i - 1].1
    }

    /// Is `other ⊆ self`?
    pub fn contains_set(&self, other: &IntervalUnion) -> bool {
        other.intervals.iter().all(|&(a, b)| {
            let i = self.intervals.partition_point(|&(s, _)| s <= a);
            i > 0 && b <= self.intervals[i - 1].1
        })
    }

    pub fn minkowski_sum(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut v = Vec::with_capacity(self.len() * other.len());
        for &(a, b) in &self.intervals {
            for &(c, d) in &other.intervals {
                v.push((a + c, b + d));
            }
        }
        Self::merged(&mut v)
    }

    pub fn negate(&self) -> IntervalUnion {
        let v = self.intervals.iter().rev().map(|&(a, b)| (-b, -a)).collect();
        IntervalUnion { intervals: v }
    }

    pub fn halve(&self) -> IntervalUnion {
        let v = self.intervals.iter().map(|&(a, b)| (a.halve(), b.halve())).collect();
        IntervalUnion { intervals: v }
    }

    /// Homothety by a nonnegative dyadic factor.
    pub fn scale(&self, t: Dyadic) -> Result<IntervalUnion> {
        if t.signum() < 0 {
            return Err(Error::InvalidScale(format!("negative factor {t}")));
        }
        if t.is_zero() {
            return Ok(IntervalUnion { intervals: vec![(Dyadic::ZERO, Dyadic::ZERO)] });
        }
        let v = self
            .intervals
            .iter()
            .map(|&(a, b)| Ok((a.checked_mul(t)?, b.checked_mul(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalUnion { intervals: v })
    }

    pub fn translate(&self, v: Dyadic) -> IntervalUnion {
        IntervalUnion { intervals: self.intervals.iter().map(|&(a, b)| (a + v, b + v)).collect() }
    }

    /// Central symmetrization `(K - K) / 2`.
    pub fn central_symmetrize(&self) -> IntervalUnion {
        self.minkowski_sum(&self.negate()).halve()
    }

    /// Excess `sup_{x ∈ other} d(x, self)`, exact.
    pub fn excess_of(&self, other: &IntervalUnion) -> Dyadic {
        let mut best = Dyadic::ZERO;
        for &(c, d) in &other.intervals {
            best = best.max(self.dist_to(c)).max(self.dist_to(d));
            // interior maxima sit at midpoints of gaps of `self` inside [c, d]
            for w in self.intervals.windows(2) {
                let (g0, g1) = (w[0].1, w[1].0);
                let mid = (g0 + g1).halve();
                if c <= mid && mid <= d {
                    best = best.max((g1 - g0).halve());
                }
            }
        }
        best
    }

    /// Distance from a point to the set.
    pub fn dist_to(&self, x: Dyadic) -> Dyadic {
        let i = self.intervals.partition_point(|&(a, _)| a <= x);
        let mut best: Option<Dyadic> = None;
        if i > 0 {
            let (_, b) = self.intervals[i - 1];
            best = Some(if x <= b { Dyadic::ZERO } else { x - b });
        }
        if i < self.intervals.len() {
            let d = self.intervals[i].0 - x;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
        best.expect("nonempty union")
    }

    /// Exact Hausdorff distance.
    pub fn hausdorff(&self, other: &IntervalUnion) -> Dyadic {
        self.excess_of(other).max(other.excess_of(self))
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(a, b)| if a == b { format!("{{{a}}}") } else { format!("[{a}, {b}]") })
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iu(v: &[(f64, f64)]) -> IntervalUnion {
        IntervalUnion::from_f64(v).unwrap()
    }

    /// Dense-sampling membership oracle for the sum of two unions.
    fn sum_contains_by_sampling(a: &IntervalUnion, b: &IntervalUnion, x: f64) -> bool {
        let steps = 4096;
        a.intervals().iter().any(|&(a0, a1)| {
            (0..=steps).any(|k| {
                let y = a0.to_f64() + (a1.to_f64() - a0.to_f64()) * k as f64 / steps as f64;
                b.intervals().iter().any(|&(b0, b1)| {
                    let z = x - y;
                    z >= b0.to_f64() - 1e-9 && z <= b1.to_f64() + 1e-9
                })
            })
        })
    }

    #[test]
    fn sum_of_unions() {
        let a = iu(&[(0.0, 1.0), (3.0, 4.0)]);
        let b = iu(&[(0.0, 1.0)]);
        let s = a.minkowski_sum(&b);
        assert_eq!(s, iu(&[(0.0, 2.0), (3.0, 5.0)]));
        for k in 0..=120 {
            let x = -0.5 + k as f64 * 0.05;
            let exact = s.contains(Dyadic::from_f64(x).unwrap());
            assert_eq!(exact, sum_contains_by_sampling(&a, &b, x), "x = {x}");
        }
    }

    #[test]
    fn merging_and_invariants() {
        let u = iu(&[(3.0, 4.0), (0.0, 1.0), (1.0, 2.0), (0.5, 0.75)]);
        assert_eq!(u.intervals().len(), 2);
        assert_eq!(u, iu(&[(0.0, 2.0), (3.0, 4.0)]));
        assert!(IntervalUnion::new([]).is_err());
        assert!(iu(&[(0.0, 1.0)]).contains_set(&iu(&[(0.25, 0.5)])));
    }

    #[test]
    fn measures() {
        let u = iu(&[(0.0, 1.0), (3.0, 4.0)]);
        assert_eq!(u.volume(), Dyadic::from_int(2));
        assert_eq!(u.diameter(), Dyadic::from_int(4));
        assert_eq!(u.hull(), iu(&[(0.0, 4.0)]));
        assert_eq!(iu(&[(-1.0, -0.5), (0.5, 1.0)]).hull(), iu(&[(-1.0, 1.0)]));
        assert_eq!(iu(&[(0.0, 2.0)]).scale(Dyadic::pow2(-1)).unwrap(), iu(&[(0.0, 1.0)]));
    }

    #[test]
    fn central_symmetrization_examples() {
        let seg = iu(&[(0.25, 2.0)]);
        assert_eq!(seg.central_symmetrize(), iu(&[(-0.875, 0.875)]));
        let two = IntervalUnion::points([Dyadic::from_int(-1), Dyadic::from_int(1)]).unwrap();
        let three = IntervalUnion::points([-1, 0, 1].map(Dyadic::from_int)).unwrap();
        assert_eq!(two.central_symmetrize(), three);
        // four pairwise interval sums, merged, then halved
        let k = iu(&[(-1.0, -0.5), (0.5, 1.0)]);
        assert_eq!(k.central_symmetrize(), iu(&[(-1.0, -0.5), (-0.25, 0.25), (0.5, 1.0)]));
    }

    #[test]
    fn hausdorff_points_vs_segment() {
        // d_H({0,...,k}, [0,k]) = 1/2
        for k in 1..=10 {
            let pts = IntervalUnion::points((0..=k).map(Dyadic::from_int)).unwrap();
            let seg = iu(&[(0.0, k as f64)]);
            assert_eq!(pts.hausdorff(&seg), Dyadic::new(1, -1));
            // dense sampling oracle
            let mut worst: f64 = 0.0;
            for s in 0..=(k * 1000) {
                let x = s as f64 / 1000.0;
                worst = worst.max((x - x.round()).abs());
            }
            assert!((worst - 0.5).abs() < 1e-12);
        }
        let a = IntervalUnion::points([Dyadic::ZERO]).unwrap();
        let b = IntervalUnion::points([Dyadic::ONE]).unwrap();
        assert_eq!(a.hausdorff(&b), Dyadic::ONE);
        assert_eq!(a.hausdorff(&a), Dyadic::ZERO);
    }

    fn arb_union() -> impl Strategy<Value = IntervalUnion> {
        prop::collection::vec((-64i64..64, 0i64..16), 1..5).prop_map(|v| {
            IntervalUnion::new(v.into_iter().map(|(a, l)| {
                (Dyadic::new(a as i128, -2), Dyadic::new((a + l) as i128, -2))
            }))
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn sum_commutative_associative(a in arb_union(), b in arb_union(), c in arb_union()) {
            prop_assert_eq!(a.minkowski_sum(&b), b.minkowski_sum(&a));
            prop_assert_eq!(a.minkowski_sum(&b).minkowski_sum(&c), a.minkowski_sum(&b.minkowski_sum(&c)));
        }

        #[test]
        fn hausdorff_metric_axioms(a in arb_union(), b in arb_union(), c in arb_union()) {
            prop_assert_eq!(a.hausdorff(&b), b.hausdorff(&a));
            prop_assert!(a.hausdorff(&c) <= a.hausdorff(&b) + b.hausdorff(&c));
            prop_assert_eq!(a.hausdorff(&a), Dyadic::ZERO);
        }

        #[test]
        fn hausdorff_matches_sampling(a in arb_union(), b in arb_union()) {
            // excess sampled on a fine grid of b never exceeds the exact value
            let exact = a.excess_of(&b).to_f64();
            let mut sampled: f64 = 0.0;
            for &(c, d) in b.intervals() {
                for k in 0..=256 {
                    let x = c.to_f64() + (d.to_f64() - c.to_f64()) * k as f64 / 256.0;
                    sampled = sampled.max(a.dist_to(Dyadic::from_f64(x).unwrap()).to_f64());
                }
            }
            prop_assert!(sampled <= exact + 1e-12);
            prop_assert!(exact - sampled <= 16.0 / 256.0 + 1e-12);
        }
    }
}
