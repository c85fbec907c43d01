//! Finite point sets on a dyadic lattice.
//!
//! Points are stored as integer coordinates `c` with value `c * 2^exp`.
//! Every point set carries a snap resolution `δ = 2^snap_exp` and the
//! invariant `exp >= snap_exp`, so distinct points are at least `δ` apart.
//! Sums, axis reflections and halving above the snap level are exact;
//! anything else rounds once to the `δ`-lattice and reports its error.

use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::{Isometry, Subspace, Vector};
use crate::scalar::Scalar;
use crate::sets::hull::{hull_2d, hull_3d};
use crate::sets::kdtree::KdTree;

/// Largest number of pairwise sums a single Minkowski sum may enumerate.
pub const DEFAULT_PAIR_CAP: usize = 1 << 22;

/// Default snap resolution relative to the diameter of the input.
pub const DEFAULT_RELATIVE_SNAP: f64 = 1e-6;

const COORD_LIMIT: i64 = 1 << 60;

#[derive(Clone)]
pub struct FinitePointSet {
    dim: usize,
    coords: Vec<[i64; 3]>,
    exp: i32,
    snap_exp: i32,
}

impl PartialEq for FinitePointSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.coords == other.coords && (self.exp == other.exp || self.is_origin())
    }
}

impl std::fmt::Debug for FinitePointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pts: Vec<Vec<f64>> = self.points_f64().iter().map(|p| p[..self.dim].to_vec()).collect();
        write!(f, "FinitePointSet(dim={}, δ=2^{}, {:?})", self.dim, self.snap_exp, pts)
    }
}

/// Round `c / 2^k` to the nearest integer, halves away from zero.
fn round_shr(c: i64, k: u32) -> i64 {
    if k == 0 {
        return c;
    }
    if k >= 63 {
        return 0;
    }
    let half = 1i64 << (k - 1);
    if c >= 0 {
        (c + half) >> k
    } else {
        -((-c + half) >> k)
    }
}

/// Largest `k` with `2^k <= x` for finite positive `x`.
fn floor_log2(x: f64) -> i32 {
    let mut k = x.log2().floor() as i32;
    // guard against log2 rounding at exact powers
    while 2f64.powi(k) > x {
        k -= 1;
    }
    while 2f64.powi(k + 1) <= x {
        k += 1;
    }
    k
}

/// Whether lattice coordinates at `2^exp` lose bits when snapped to `2^snap_exp`.
fn rounds_at(coords: &[[i64; 3]], exp: i32, snap_exp: i32) -> bool {
    let lost = (snap_exp - exp).clamp(0, 64) as u32;
    lost > 0 && coords.iter().flatten().any(|x| x.trailing_zeros() < lost)
}

impl FinitePointSet {
    /// Builds a set from float points, snapping to `δ`.
    ///
    /// `snap` is rounded down to a power of two; by default it is
    /// `1e-6 * diameter` (or `1e-6` of the coordinate scale for a single point).
    pub fn from_points(dim: usize, points: &[Vec<f64>], snap: Option<f64>) -> Result<Self> {
        check_dim(dim)?;
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidScale("non-finite coordinate".into()));
            }
        }
        let delta = match snap {
            Some(d) if d > 0.0 && d.is_finite() => d,
            Some(d) => return Err(Error::InvalidScale(format!("snap resolution {d} must be positive"))),
            None => {
                let mut diam: f64 = 0.0;
                for a in points {
                    for b in points {
                        let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                        diam = diam.max(d2.sqrt());
                    }
                }
                if diam == 0.0 {
                    diam = points[0].iter().fold(1.0f64, |m, x| m.max(x.abs()));
                }
                DEFAULT_RELATIVE_SNAP * diam
            }
        };
        let snap_exp = floor_log2(delta);
        let scale = 2f64.powi(-snap_exp);
        let coords = points
            .iter()
            .map(|p| {
                let mut c = [0i64; 3];
                for (k, x) in p.iter().enumerate() {
                    let v = (x * scale).round();
                    if v.abs() >= COORD_LIMIT as f64 {
                        return Err(Error::Overflow);
                    }
                    c[k] = v as i64;
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_lattice(dim, coords, snap_exp, snap_exp))
    }

    /// Builds a set from exact dyadic points. Points finer than `δ` are snapped.
    pub fn from_dyadic(dim: usize, points: &[Vec<Dyadic>], snap_exp: i32) -> Result<Self> {
        check_dim(dim)?;
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut exp = i32::MAX;
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            for x in p.iter().filter(|x| !x.is_zero()) {
                exp = exp.min(x.exponent());
            }
        }
        let exp = if exp == i32::MAX { snap_exp } else { exp };
        let mut coords = Vec::with_capacity(points.len());
        for p in points {
            let mut c = [0i64; 3];
            for (k, x) in p.iter().enumerate() {
                let shift = x.exponent() - exp;
                let m = if x.is_zero() { 0 } else { x.mantissa().checked_shl(shift as u32).ok_or(Error::Overflow)? };
                if m.unsigned_abs() >= COORD_LIMIT as u128 {
                    return Err(Error::Overflow);
                }
                c[k] = m as i64;
            }
            coords.push(c);
        }
        Ok(Self::from_lattice(dim, coords, exp, snap_exp))
    }

    /// Normalizes raw lattice data: rounds to `δ` when finer, sorts, dedupes
    /// and shifts common factors of two into the exponent.
    fn from_lattice(dim: usize, mut coords: Vec<[i64; 3]>, mut exp: i32, snap_exp: i32) -> Self {
        if exp < snap_exp {
            let k = (snap_exp - exp) as u32;
            for c in coords.iter_mut() {
                for x in c.iter_mut() {
                    *x = round_shr(*x, k);
                }
            }
            exp = snap_exp;
        }
        coords.par_sort_unstable();
        coords.dedup();
        let tz = coords.iter().flatten().filter(|&&x| x != 0).map(|x| x.trailing_zeros()).min();
        match tz {
            None => exp = snap_exp,
            Some(t) if t > 0 => {
                for c in coords.iter_mut() {
                    for x in c.iter_mut() {
                        *x >>= t;
                    }
                }
                exp += t as i32;
            }
            _ => {}
        }
        FinitePointSet { dim, coords, exp, snap_exp }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    /// Always false: point sets are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Snap resolution `δ`.
    pub fn delta(&self) -> f64 {
        2f64.powi(self.snap_exp)
    }

    pub fn snap_exp(&self) -> i32 {
        self.snap_exp
    }

    /// Same points with a different snap resolution (rounding if coarser).
    pub fn with_snap_exp(&self, snap_exp: i32) -> Self {
        Self::from_lattice(self.dim, self.coords.clone(), self.exp, snap_exp)
    }

    fn is_origin(&self) -> bool {
        self.coords.len() == 1 && self.coords[0] == [0, 0, 0]
    }

    fn unit(&self) -> f64 {
        2f64.powi(self.exp)
    }

    /// Exact coordinates of every point.
    pub fn points_dyadic(&self) -> Vec<Vec<Dyadic>> {
        self.coords
            .iter()
            .map(|c| c[..self.dim].iter().map(|&x| Dyadic::new(x as i128, self.exp)).collect())
            .collect()
    }

    /// Coordinates as floats, padded with zeros to length 3.
    pub fn points_f64(&self) -> Vec<[f64; 3]> {
        let u = self.unit();
        self.coords.iter().map(|c| [c[0] as f64 * u, c[1] as f64 * u, c[2] as f64 * u]).collect()
    }

    pub fn points(&self) -> Vec<Vector> {
        self.points_f64().iter().map(|p| Vector::new(&p[..self.dim])).collect()
    }

    /// Exact membership of a dyadic point.
    pub fn contains_dyadic(&self, p: &[Dyadic]) -> bool {
        let mut c = [0i64; 3];
        for (k, x) in p.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let shift = x.exponent() - self.exp;
            if shift < 0 {
                return false;
            }
            match x.mantissa().checked_shl(shift as u32) {
                Some(m) if m.unsigned_abs() < COORD_LIMIT as u128 => c[k] = m as i64,
                _ => return false,
            }
        }
        self.coords.binary_search(&c).is_ok()
    }

    /// Is every point of `self` in `other`? Exact.
    pub fn is_subset_of(&self, other: &FinitePointSet) -> bool {
        self.points_dyadic().iter().all(|p| other.contains_dyadic(p))
    }

    fn aligned(&self, exp: i32) -> Result<Vec<[i64; 3]>> {
        let k = (self.exp - exp) as u32;
        let f = 1i64.checked_shl(k).filter(|&f| f > 0).ok_or(Error::Overflow)?;
        self.coords
            .iter()
            .map(|c| {
                let mut out = [0i64; 3];
                for i in 0..3 {
                    out[i] = c[i].checked_mul(f).filter(|v| v.abs() < COORD_LIMIT).ok_or(Error::Overflow)?;
                }
                Ok(out)
            })
            .collect()
    }

    /// Exact Minkowski sum with the default pair cap.
    pub fn minkowski_sum(&self, other: &FinitePointSet) -> Result<FinitePointSet> {
        self.minkowski_sum_capped(other, DEFAULT_PAIR_CAP)
    }

    /// Exact Minkowski sum; fails with `CapExceeded` beyond `cap` pairs.
    pub fn minkowski_sum_capped(&self, other: &FinitePointSet, cap: usize) -> Result<FinitePointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let pairs = self.len().saturating_mul(other.len());
        if pairs > cap {
            return Err(Error::CapExceeded(format!("{pairs} pairwise sums exceed the cap of {cap}")));
        }
        let exp = self.exp.min(other.exp);
        let a = self.aligned(exp)?;
        let b = other.aligned(exp)?;
        let coords: Vec<[i64; 3]> = a
            .par_chunks(64)
            .flat_map_iter(|chunk| {
                let mut local = Vec::with_capacity(chunk.len() * b.len());
                for p in chunk {
                    for q in &b {
                        local.push([p[0] + q[0], p[1] + q[1], p[2] + q[2]]);
                    }
                }
                local.sort_unstable();
                local.dedup();
                local
            })
            .collect();
        Ok(Self::from_lattice(self.dim, coords, exp, self.snap_exp.min(other.snap_exp)))
    }

    /// `x -> x + v` for a dyadic vector (exact above the snap level).
    pub fn translate(&self, v: &[Dyadic]) -> Result<FinitePointSet> {
        let single = FinitePointSet::from_dyadic(self.dim, &[v.to_vec()], self.snap_exp)?;
        self.minkowski_sum(&single)
    }

    /// Multiplies every point by `2^k`. Rounds once if the result is finer than `δ`.
    pub fn scale_pow2(&self, k: i32) -> (FinitePointSet, f64) {
        let exp = self.exp + k;
        let err = if rounds_at(&self.coords, exp, self.snap_exp) { self.rounding_error() } else { 0.0 };
        (Self::from_lattice(self.dim, self.coords.clone(), exp, self.snap_exp), err)
    }

    /// `½ A`, exact above the snap level.
    pub fn halve(&self) -> (FinitePointSet, f64) {
        self.scale_pow2(-1)
    }

    /// Homothety `tA`, returned with its Hausdorff error bound.
    pub fn scale(&self, t: &Scalar) -> Result<(FinitePointSet, f64)> {
        if t.is_negative() || !t.to_f64().is_finite() {
            return Err(Error::InvalidScale(format!("scale factor {t:?} must be nonnegative")));
        }
        if let Some(k) = t.power_of_two_exponent() {
            return Ok(self.scale_pow2(k));
        }
        if t.to_f64() == 0.0 {
            return Ok((Self::from_lattice(self.dim, vec![[0; 3]], self.snap_exp, self.snap_exp), 0.0));
        }
        if let Some(d) = t.as_dyadic() {
            let m = i64::try_from(d.mantissa()).map_err(|_| Error::Overflow)?;
            let coords = self
                .coords
                .iter()
                .map(|c| {
                    let mut o = [0i64; 3];
                    for i in 0..3 {
                        o[i] = c[i].checked_mul(m).filter(|v| v.abs() < COORD_LIMIT).ok_or(Error::Overflow)?;
                    }
                    Ok(o)
                })
                .collect::<Result<Vec<_>>>()?;
            let exp = self.exp + d.exponent();
            let err = if exp < self.snap_exp { self.rounding_error() } else { 0.0 };
            return Ok((Self::from_lattice(self.dim, coords, exp, self.snap_exp), err));
        }
        let t = t.to_f64();
        let pts: Vec<Vec<f64>> = self.points_f64().iter().map(|p| p[..self.dim].iter().map(|x| x * t).collect()).collect();
        let out = Self::from_points(self.dim, &pts, Some(self.delta()))?;
        Ok((out, self.rounding_error() + self.float_slack(t.abs())))
    }

    /// Worst-case displacement from one rounding to the `δ`-lattice.
    pub fn rounding_error(&self) -> f64 {
        self.delta() * (self.dim as f64).sqrt() / 2.0
    }

    fn float_slack(&self, factor: f64) -> f64 {
        let m = self.coords.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0) as f64 * self.unit();
        16.0 * f64::EPSILON * m * factor.max(1.0)
    }

    /// Image under a linear isometry, snapped to the lattice `2^(snap_exp - extra)`.
    fn image(&self, iso: &Isometry, extra: i32) -> Result<(FinitePointSet, f64)> {
        if iso.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: iso.dim() });
        }
        if let Some(perm) = iso.signed_permutation() {
            let coords = self
                .coords
                .iter()
                .map(|c| {
                    let mut o = [0i64; 3];
                    for (i, &(j, neg)) in perm.iter().enumerate() {
                        o[i] = if neg { -c[j] } else { c[j] };
                    }
                    o
                })
                .collect();
            return Ok((Self::from_lattice(self.dim, coords, self.exp, self.snap_exp), 0.0));
        }
        let pts: Vec<Vec<f64>> = self.points_f64().iter().map(|p| iso.apply(&p[..self.dim])).collect();
        let fine = FinitePointSet::from_points(self.dim, &pts, Some(2f64.powi(self.snap_exp - extra)))?;
        let err = fine.rounding_error() + self.float_slack(1.0);
        Ok((fine, err))
    }

    /// Image under an isometry; exact for signed permutations.
    pub fn apply(&self, iso: &Isometry) -> Result<(FinitePointSet, f64)> {
        self.image(iso, 0)
    }

    /// `R_H A`.
    pub fn reflect(&self, h: &Subspace) -> Result<(FinitePointSet, f64)> {
        self.apply(&h.reflection())
    }

    /// `(1/m) Σ_j A_j K` with the default pair cap.
    pub fn isometry_mean(&self, isos: &[Isometry]) -> Result<(FinitePointSet, f64)> {
        self.isometry_mean_capped(isos, DEFAULT_PAIR_CAP)
    }

    /// `(1/m) Σ_j A_j K`, returned with its Hausdorff error bound.
    ///
    /// Exact when every isometry is a signed permutation, `m` is a power of
    /// two and the result is not finer than `δ`. Otherwise non-permutation
    /// images are rounded on a finer lattice and the mean is rounded once,
    /// so the error stays close to `δ√n/2`.
    pub fn isometry_mean_capped(&self, isos: &[Isometry], cap: usize) -> Result<(FinitePointSet, f64)> {
        let m = isos.len();
        if m == 0 {
            return Err(Error::InvalidScale("isometry mean of zero terms".into()));
        }
        let extra = (usize::BITS - (m - 1).leading_zeros()) as i32 + 4;
        let mut image_err = 0.0f64;
        let mut acc: Option<FinitePointSet> = None;
        for iso in isos {
            let (img, e) = self.image(iso, extra)?;
            image_err = image_err.max(e);
            acc = Some(match acc {
                None => img,
                Some(a) => a.minkowski_sum_capped(&img, cap)?,
            });
        }
        let sum = acc.expect("nonempty");
        let sum = FinitePointSet { snap_exp: self.snap_exp.min(sum.exp), ..sum };
        if m.is_power_of_two() {
            let k = m.trailing_zeros() as i32;
            let exp = sum.exp - k;
            let err = if rounds_at(&sum.coords, exp, self.snap_exp) { self.rounding_error() } else { 0.0 };
            let out = Self::from_lattice(self.dim, sum.coords, exp, self.snap_exp);
            return Ok((out, err + image_err));
        }
        let inv = 1.0 / m as f64;
        let pts: Vec<Vec<f64>> = sum.points_f64().iter().map(|p| p[..self.dim].iter().map(|x| x * inv).collect()).collect();
        let out = Self::from_points(self.dim, &pts, Some(self.delta()))?;
        Ok((out, self.rounding_error() + image_err + self.float_slack(1.0)))
    }

    /// `M_H A = ½(A + R_H A)`.
    pub fn minkowski_symmetrize(&self, h: &Subspace) -> Result<(FinitePointSet, f64)> {
        self.minkowski_symmetrize_capped(h, DEFAULT_PAIR_CAP)
    }

    pub fn minkowski_symmetrize_capped(&self, h: &Subspace, cap: usize) -> Result<(FinitePointSet, f64)> {
        if h.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: h.ambient_dim() });
        }
        self.isometry_mean_capped(&[Isometry::identity(self.dim), h.reflection()], cap)
    }

    /// `h_A(u) = max_x x·u`.
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        if u.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroDirection);
        }
        Ok(self
            .points_f64()
            .iter()
            .map(|p| p.iter().zip(u).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Extreme points of the convex hull, as lattice coordinates.
    fn extreme_lattice(&self) -> Vec<[i64; 3]> {
        match self.dim {
            1 => {
                let lo = self.coords[0];
                let hi = self.coords[self.coords.len() - 1];
                if lo == hi { vec![lo] } else { vec![lo, hi] }
            }
            2 => {
                let p: Vec<[i64; 2]> = self.coords.iter().map(|c| [c[0], c[1]]).collect();
                hull_2d(&p).into_iter().map(|q| [q[0], q[1], 0]).collect()
            }
            _ => hull_3d(&self.coords).extreme_points(),
        }
    }

    /// Extreme points of `conv A` (2-D: counterclockwise).
    pub fn extreme_points(&self) -> FinitePointSet {
        let e = self.extreme_lattice();
        FinitePointSet { coords: sorted(e), ..self.clone() }
    }

    /// Hull vertices as floats, counterclockwise in 2-D.
    pub fn hull_vertices_f64(&self) -> Vec<[f64; 3]> {
        let u = self.unit();
        self.extreme_lattice().iter().map(|c| [c[0] as f64 * u, c[1] as f64 * u, c[2] as f64 * u]).collect()
    }

    /// Exact diameter computed over hull vertices.
    pub fn diameter(&self) -> f64 {
        let e = self.extreme_lattice();
        let mut best: i128 = 0;
        for (i, a) in e.iter().enumerate() {
            for b in &e[i + 1..] {
                let d2: i128 = (0..3).map(|k| ((a[k] - b[k]) as i128).pow(2)).sum();
                best = best.max(d2);
            }
        }
        (best as f64).sqrt() * self.unit()
    }

    pub fn kdtree(&self) -> KdTree {
        KdTree::new(self.dim, self.points_f64())
    }

    /// `sup_{x ∈ other} d(x, self)`.
    pub fn excess_of(&self, other: &FinitePointSet) -> f64 {
        let tree = self.kdtree();
        other.points_f64().par_iter().map(|p| tree.nearest_dist(p)).reduce(|| 0.0, f64::max)
    }

    pub fn hausdorff(&self, other: &FinitePointSet) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(self.excess_of(other).max(other.excess_of(self)))
    }
}

fn sorted(mut v: Vec<[i64; 3]>) -> Vec<[i64; 3]> {
    v.sort_unstable();
    v
}

fn check_dim(dim: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::Unsupported(format!("point sets live in R^1..R^3, got R^{dim}")));
    }
    Ok(())
}
