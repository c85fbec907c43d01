//! Compact-set representations and the metric toolkit.
//!
//! [`SetRep`] dispatches the common operations over the four
//! representations. Binary operations other than the Hausdorff distance
//! require both operands to use the same representation.

pub mod grid;
pub mod hausdorff;
pub mod hull;
pub mod intervals;
pub mod kdtree;
pub mod point_set;
pub mod polygon;
pub mod text;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::{Isometry, Subspace};
use crate::scalar::Scalar;

use grid::GridSet;
use intervals::IntervalUnion;
use kdtree::KdTree;
use point_set::FinitePointSet;
use polygon::ConvexPolygon;

#[derive(Clone, Debug, PartialEq)]
pub enum SetRep {
    Points(FinitePointSet),
    Intervals(IntervalUnion),
    Grid(GridSet),
    Polygon(ConvexPolygon),
}

impl From<FinitePointSet> for SetRep {
    fn from(s: FinitePointSet) -> Self {
        SetRep::Points(s)
    }
}

impl From<IntervalUnion> for SetRep {
    fn from(s: IntervalUnion) -> Self {
        SetRep::Intervals(s)
    }
}

impl From<GridSet> for SetRep {
    fn from(s: GridSet) -> Self {
        SetRep::Grid(s)
    }
}

impl From<ConvexPolygon> for SetRep {
    fn from(s: ConvexPolygon) -> Self {
        SetRep::Polygon(s)
    }
}

fn mismatch(a: &SetRep, b: &SetRep) -> Error {
    Error::RepresentationMismatch(format!("{} vs {}", a.kind(), b.kind()))
}

impl SetRep {
    pub fn kind(&self) -> &'static str {
        match self {
            SetRep::Points(_) => "pointset",
            SetRep::Intervals(_) => "intervals",
            SetRep::Grid(_) => "grid",
            SetRep::Polygon(_) => "polygon",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SetRep::Points(s) => s.dim(),
            SetRep::Intervals(_) => 1,
            SetRep::Grid(g) => g.dim(),
            SetRep::Polygon(_) => 2,
        }
    }

    /// Is the representation exact (dyadic) rather than float?
    pub fn is_exact(&self) -> bool {
        !matches!(self, SetRep::Polygon(_))
    }

    pub fn minkowski_sum(&self, other: &SetRep) -> Result<SetRep> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(match (self, other) {
            (SetRep::Points(a), SetRep::Points(b)) => a.minkowski_sum(b)?.into(),
            (SetRep::Intervals(a), SetRep::Intervals(b)) => a.minkowski_sum(b).into(),
            (SetRep::Grid(a), SetRep::Grid(b)) => a.minkowski_sum(b)?.into(),
            (SetRep::Polygon(a), SetRep::Polygon(b)) => a.minkowski_sum(b).into(),
            _ => return Err(mismatch(self, other)),
        })
    }

    /// Homothety `tA` and its Hausdorff error bound.
    pub fn scale(&self, t: &Scalar) -> Result<(SetRep, f64)> {
        if t.is_negative() {
            return Err(Error::InvalidScale(format!("scale factor {t:?} must be nonnegative")));
        }
        Ok(match self {
            SetRep::Points(s) => {
                let (s, e) = s.scale(t)?;
                (s.into(), e)
            }
            SetRep::Intervals(k) => match t.as_dyadic() {
                Some(d) => (k.scale(d)?.into(), 0.0),
                None => {
                    let d = Dyadic::from_f64(t.to_f64())?;
                    (k.scale(d)?.into(), 0.0)
                }
            },
            SetRep::Grid(g) => (g.scale(t)?.into(), 0.0),
            SetRep::Polygon(p) => (p.scale(t.to_f64())?.into(), 0.0),
        })
    }

    /// Image under a linear isometry, with its error bound.
    pub fn apply(&self, iso: &Isometry) -> Result<(SetRep, f64)> {
        if iso.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: iso.dim() });
        }
        Ok(match self {
            SetRep::Points(s) => {
                let (s, e) = s.apply(iso)?;
                (s.into(), e)
            }
            SetRep::Intervals(k) => match iso.signed_permutation() {
                Some([(0, true)]) => (k.negate().into(), 0.0),
                _ => (k.clone().into(), 0.0),
            },
            SetRep::Grid(g) => (g.apply(iso)?.into(), 0.0),
            SetRep::Polygon(p) => (p.apply(iso)?.into(), 0.0),
        })
    }

    pub fn reflect(&self, h: &Subspace) -> Result<(SetRep, f64)> {
        self.apply(&h.reflection())
    }

    /// `conv A`: an interval in 1-D, a polygon in 2-D, and the extreme
    /// points in 3-D.
    pub fn convex_hull(&self) -> Result<SetRep> {
        Ok(match (self, self.dim()) {
            (SetRep::Intervals(k), _) => k.hull().into(),
            (SetRep::Polygon(p), _) => p.clone().into(),
            (SetRep::Points(s), 1) => {
                let e = s.points_dyadic();
                IntervalUnion::interval(e[0][0], e[e.len() - 1][0])?.into()
            }
            (SetRep::Points(s), 2) => {
                let v: Vec<[f64; 2]> = s.hull_vertices_f64().iter().map(|p| [p[0], p[1]]).collect();
                ConvexPolygon::from_points(&v)?.into()
            }
            (SetRep::Points(s), _) => s.extreme_points().into(),
            (SetRep::Grid(g), 1) => {
                let e = g.hull_extreme_points();
                IntervalUnion::interval(e[0][0], e[1][0])?.into()
            }
            (SetRep::Grid(g), 2) => {
                let v: Vec<[f64; 2]> = g.hull_extreme_points().iter().map(|p| [p[0].to_f64(), p[1].to_f64()]).collect();
                ConvexPolygon::from_points(&v)?.into()
            }
            (SetRep::Grid(g), _) => {
                let snap = g.spacing().exponent() - 1;
                FinitePointSet::from_dyadic(3, &g.hull_extreme_points(), snap)?.into()
            }
        })
    }

    pub fn diameter(&self) -> f64 {
        match self {
            SetRep::Points(s) => s.diameter(),
            SetRep::Intervals(k) => k.diameter().to_f64(),
            SetRep::Grid(g) => g.diameter(),
            SetRep::Polygon(p) => p.diameter(),
        }
    }

    /// `h_A(u) = sup_{x ∈ A} x·u`.
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.len() });
        }
        if u.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroDirection);
        }
        match self {
            SetRep::Points(s) => s.support(u),
            SetRep::Polygon(p) => p.support([u[0], u[1]]),
            SetRep::Intervals(k) => Ok((k.min().to_f64() * u[0]).max(k.max().to_f64() * u[0])),
            SetRep::Grid(g) => Ok(g
                .hull_extreme_points()
                .iter()
                .map(|p| p.iter().zip(u).map(|(a, b)| a.to_f64() * b).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max)),
        }
    }

    /// Mean width of a planar set: that of its hull, perimeter / π.
    pub fn mean_width_2d(&self) -> Result<f64> {
        match self {
            SetRep::Polygon(p) => Ok(p.mean_width()),
            // a set and its hull have the same support function
            _ if self.dim() == 2 => Ok(self.hull_polygon()?.mean_width()),
            _ => Err(Error::Unsupported(format!("mean width is planar, got a {}-D {}", self.dim(), self.kind()))),
        }
    }

    /// Lebesgue measure; exact on intervals and grids.
    pub fn volume(&self) -> Scalar {
        match self {
            SetRep::Points(_) => Scalar::Exact(Dyadic::ZERO),
            SetRep::Intervals(k) => Scalar::Exact(k.volume()),
            SetRep::Grid(g) => Scalar::Exact(g.volume()),
            SetRep::Polygon(p) => Scalar::Float(p.area()),
        }
    }

    /// Rasterization at spacing `h`.
    pub fn to_grid(&self, h: Dyadic) -> Result<GridSet> {
        match self {
            SetRep::Points(s) => GridSet::from_point_set(s, h),
            SetRep::Polygon(p) => GridSet::from_polygon(p, h),
            SetRep::Grid(g) => g.at_spacing(h),
            SetRep::Intervals(k) => {
                let mut cells = Vec::new();
                for &(a, b) in k.intervals() {
                    let lo = (a.to_f64() / h.to_f64()).floor() as i64;
                    let hi = ((b.to_f64() / h.to_f64()).ceil() as i64 - 1).max(lo);
                    cells.extend((lo..=hi).map(|x| [x, 0, 0]));
                }
                GridSet::new(1, h, cells)
            }
        }
    }

    /// Exact realization of a 1-D grid as intervals.
    fn grid_1d_intervals(g: &GridSet) -> Result<IntervalUnion> {
        let h = g.spacing();
        IntervalUnion::new(
            g.rows()[&[0, 0]].iter().map(|&(s, e)| (Dyadic::from_int(s) * h, Dyadic::from_int(e + 1) * h)),
        )
    }

    fn float_points(&self) -> Option<(Vec<[f64; 3]>, f64)> {
        match self {
            SetRep::Points(s) => Some((s.points_f64(), 0.0)),
            SetRep::Grid(g) => Some((g.centers_f64(), g.collar() / 2.0)),
            _ => None,
        }
    }

    /// Hausdorff distance and its error bound, with the default sampling
    /// resolution for mixed polygon pairs.
    pub fn hausdorff(&self, other: &SetRep) -> Result<(f64, f64)> {
        let res = hausdorff::DEFAULT_RELATIVE_RESOLUTION * self.diameter().max(other.diameter()).max(f64::MIN_POSITIVE);
        self.hausdorff_with(other, res)
    }

    /// Hausdorff distance with an explicit sampling resolution `δ_s` for
    /// polygon versus point or grid pairs (error `δ_s√2/2`).
    pub fn hausdorff_with(&self, other: &SetRep, resolution: f64) -> Result<(f64, f64)> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        use SetRep::*;
        Ok(match (self, other) {
            (Points(a), Points(b)) => (a.hausdorff(b)?, 0.0),
            (Intervals(a), Intervals(b)) => (a.hausdorff(b).to_f64(), 0.0),
            (Grid(a), Grid(b)) => a.hausdorff(b)?,
            (Polygon(a), Polygon(b)) => (a.hausdorff(b), 0.0),
            (Intervals(k), Grid(g)) | (Grid(g), Intervals(k)) => (k.hausdorff(&Self::grid_1d_intervals(g)?).to_f64(), 0.0),
            (Intervals(k), Points(s)) | (Points(s), Intervals(k)) => {
                let pts: Vec<f64> = s.points_f64().iter().map(|p| p[0]).collect();
                (hausdorff::points_intervals(&pts, k), 0.0)
            }
            (Polygon(p), x) | (x, Polygon(p)) => {
                let (pts, e0) = x.float_points().ok_or_else(|| mismatch(self, other))?;
                let (v, e) = hausdorff::points_polygon(&pts, p, resolution);
                (v, e + e0)
            }
            (Points(_), Grid(_)) | (Grid(_), Points(_)) => {
                let (pa, ea) = self.float_points().expect("points or grid");
                let (pb, eb) = other.float_points().expect("points or grid");
                let n = self.dim();
                let (ta, tb) = (KdTree::new(n, pa.clone()), KdTree::new(n, pb.clone()));
                let ex = |t: &KdTree, p: &[[f64; 3]]| p.iter().map(|q| t.nearest_dist(q)).fold(0.0, f64::max);
                (ex(&ta, &pb).max(ex(&tb, &pa)), ea + eb)
            }
        })
    }

    /// Exact subset test on exact representations (`None` when undecidable).
    pub fn is_subset_of(&self, other: &SetRep) -> Option<bool> {
        match (self, other) {
            (SetRep::Points(a), SetRep::Points(b)) => Some(a.is_subset_of(b)),
            (SetRep::Intervals(a), SetRep::Intervals(b)) => Some(b.contains_set(a)),
            (SetRep::Grid(a), SetRep::Grid(b)) => a.is_subset_of(b).ok(),
            (SetRep::Points(a), SetRep::Intervals(b)) if a.dim() == 1 => {
                Some(a.points_dyadic().iter().all(|p| b.contains(p[0])))
            }
            _ => None,
        }
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            SetRep::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_grid(&self) -> Option<&GridSet> {
        match self {
            SetRep::Grid(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_points(&self) -> Option<&FinitePointSet> {
        match self {
            SetRep::Points(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_intervals(&self) -> Option<&IntervalUnion> {
        match self {
            SetRep::Intervals(k) => Some(k),
            _ => None,
        }
    }

    /// Polygon view of a 2-D set's hull (used for mean-width telemetry).
    pub fn hull_polygon(&self) -> Result<ConvexPolygon> {
        match self.convex_hull()? {
            SetRep::Polygon(p) => Ok(p),
            other => Err(Error::DimensionMismatch { expected: 2, found: other.dim() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn hulls() {
        let s = FinitePointSet::from_points(2, &[vec![-1.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]], None).unwrap();
        let h = SetRep::from(s).convex_hull().unwrap();
        assert_eq!(h, SetRep::Polygon(ConvexPolygon::from_points(&[[-1.0, 0.0], [1.0, 0.0]]).unwrap()));
        let k = IntervalUnion::from_f64(&[(-1.0, -0.5), (0.5, 1.0)]).unwrap();
        assert_eq!(SetRep::from(k).convex_hull().unwrap(), SetRep::Intervals(IntervalUnion::from_f64(&[(-1.0, 1.0)]).unwrap()));
    }

    #[test]
    fn measures() {
        let k = SetRep::from(IntervalUnion::from_f64(&[(0.0, 1.0), (3.0, 4.0)]).unwrap());
        assert_eq!(k.diameter(), 4.0);
        assert_eq!(k.volume(), Scalar::Exact(d("2")));
        let s = SetRep::from(FinitePointSet::from_points(2, &[vec![-1.0, 0.0], vec![1.0, 0.0]], None).unwrap());
        assert_eq!(s.volume(), Scalar::Exact(Dyadic::ZERO));
        assert_eq!(s.diameter(), 2.0);
        assert_eq!(s.support(&[0.0, 1.0]).unwrap(), 0.0);
        let sq = SetRep::from(ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap());
        assert_eq!(sq.volume(), Scalar::Float(1.0));
        assert_relative_eq!(sq.diameter(), 2f64.sqrt());
    }

    #[test]
    fn scale_examples() {
        let k = SetRep::from(IntervalUnion::from_f64(&[(0.0, 2.0)]).unwrap());
        let (h, e) = k.scale(&Scalar::from(d("0.5"))).unwrap();
        assert_eq!(e, 0.0);
        assert_eq!(h, SetRep::from(IntervalUnion::from_f64(&[(0.0, 1.0)]).unwrap()));
        let sq = SetRep::from(ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap());
        let (two, _) = sq.scale(&Scalar::from(2.0)).unwrap();
        assert_eq!(two, SetRep::from(ConvexPolygon::rectangle(0.0, 0.0, 2.0, 2.0).unwrap()));
        assert!(sq.scale(&Scalar::from(-1.0)).is_err());
    }

    #[test]
    fn point_distances() {
        let a = SetRep::from(FinitePointSet::from_points(1, &[vec![0.0]], None).unwrap());
        let b = SetRep::from(FinitePointSet::from_points(1, &[vec![1.0]], None).unwrap());
        assert_eq!(a.hausdorff(&b).unwrap(), (1.0, 0.0));
        assert_eq!(a.hausdorff(&a).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn mixed_grid_interval_distance_is_exact() {
        let g = SetRep::from(GridSet::new(1, Dyadic::ONE, [[0, 0, 0], [3, 0, 0]]).unwrap());
        let k = SetRep::from(IntervalUnion::from_f64(&[(0.0, 4.0)]).unwrap());
        assert_eq!(g.hausdorff(&k).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn rasterization_bound() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let pts: Vec<[f64; 2]> = (0..6).map(|_| [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]).collect();
            let p = ConvexPolygon::from_points(&pts).unwrap();
            let h = d("0.125");
            let g = SetRep::Polygon(p.clone()).to_grid(h).unwrap();
            // the realized grid is a union of cubes: compare via its hull
            // and through the center sampling bridge
            let (v, err) = SetRep::Grid(g).hausdorff_with(&SetRep::Polygon(p), 1e-3).unwrap();
            assert!(v - err <= h.to_f64() * 2f64.sqrt(), "{v} ± {err}");
        }
    }
}
