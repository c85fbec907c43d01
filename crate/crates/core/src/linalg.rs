//! Vectors, subspaces, reflections and rotations.
//!
//! Coordinates here are binary64. The exact (dyadic) paths live in the
//! lattice-backed set types, which only ever need signed permutations of
//! coordinates; [`Isometry::signed_permutation`] exposes that structure.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Tolerance;

#[derive(Clone, Debug, PartialEq)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        Vector(coords.into())
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    /// Standard unit vector `e_i` in `R^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        (self - other).norm()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, t: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * t).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

/// A linear subspace `H` of `R^n` with an orthonormal basis.
///
/// `dim == 0` encodes the origin, so reflecting in it is the point
/// reflection `x -> -x` used by central symmetrization.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    axes: Option<Vec<usize>>,
}

impl Subspace {
    /// Builds a subspace from an orthonormal basis, checked within `tol`.
    pub fn new(ambient_dim: usize, basis: Vec<Vector>, tol: Tolerance) -> Result<Self> {
        if basis.len() >= ambient_dim.max(1) && ambient_dim > 0 {
            return Err(Error::InvalidSubspace(format!(
                "dimension {} must be below ambient dimension {ambient_dim}",
                basis.len()
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: b.dim() });
            }
            for (j, c) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if !tol.eq(b.dot(c), want) {
                    return Err(Error::InvalidSubspace("basis is not orthonormal".into()));
                }
            }
        }
        let axes = basis
            .iter()
            .map(|b| {
                let nz: Vec<usize> = (0..ambient_dim).filter(|&k| b[k] != 0.0).collect();
                (nz.len() == 1 && b[nz[0]].abs() == 1.0).then(|| nz[0])
            })
            .collect::<Option<Vec<usize>>>()
            .map(|mut a| {
                a.sort_unstable();
                a
            });
        Ok(Subspace { ambient_dim, basis, axes })
    }

    /// The zero subspace `{o}`.
    pub fn origin(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), axes: Some(Vec::new()) }
    }

    /// Span of the given coordinate axes.
    pub fn axes(ambient_dim: usize, axes: &[usize]) -> Result<Self> {
        let mut sorted = axes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != axes.len() || sorted.iter().any(|&a| a >= ambient_dim) {
            return Err(Error::InvalidSubspace(format!("bad axes {axes:?} in R^{ambient_dim}")));
        }
        if sorted.len() >= ambient_dim {
            return Err(Error::InvalidSubspace("subspace must be proper".into()));
        }
        let basis = sorted.iter().map(|&a| Vector::unit(ambient_dim, a)).collect();
        Ok(Subspace { ambient_dim, basis, axes: Some(sorted) })
    }

    /// The line through the origin at angle `theta` (radians) in `R^2`.
    pub fn line_2d(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        // exact axes when the angle lands on one
        let (c, s) = if s.abs() < 1e-15 {
            (c.signum(), 0.0)
        } else if c.abs() < 1e-15 {
            (0.0, s.signum())
        } else {
            (c, s)
        };
        Subspace::new(2, vec![Vector::new([c, s])], Tolerance(1e-9)).expect("unit line")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.axes.is_some()
    }

    /// Coordinate axes spanning `H`, when axis-aligned.
    pub fn axis_indices(&self) -> Option<&[usize]> {
        self.axes.as_deref()
    }

    /// Coordinate axes spanning `H^⊥`, when axis-aligned.
    pub fn orthogonal_axes(&self) -> Option<Vec<usize>> {
        let axes = self.axes.as_ref()?;
        Some((0..self.ambient_dim).filter(|a| !axes.contains(a)).collect())
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: n });
        }
        Ok(())
    }

    /// Orthogonal projection `x|H`.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        self.check_dim(x.dim())?;
        let mut out = Vector::zeros(self.ambient_dim);
        for b in &self.basis {
            let t = x.dot(b);
            for (o, bi) in out.0.iter_mut().zip(&b.0) {
                *o += t * bi;
            }
        }
        Ok(out)
    }

    /// Reflection `R_H x = 2(x|H) - x`.
    pub fn reflect(&self, x: &Vector) -> Result<Vector> {
        let p = self.project(x)?;
        Ok(&(&p * 2.0) - x)
    }

    /// `R_H` as an isometry (exact signed permutation when axis-aligned).
    pub fn reflection(&self) -> Isometry {
        let n = self.ambient_dim;
        if let Some(axes) = &self.axes {
            let perm = (0..n).map(|i| (i, !axes.contains(&i))).collect();
            return Isometry::from_signed_permutation(perm);
        }
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = -1.0;
        }
        for b in &self.basis {
            for i in 0..n {
                for j in 0..n {
                    m[i * n + j] += 2.0 * b[i] * b[j];
                }
            }
        }
        Isometry { dim: n, matrix: m, signed_perm: None }
    }
}

/// A linear isometry of `R^n`, stored as a row-major orthogonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    dim: usize,
    matrix: Vec<f64>,
    /// `out[i] = ±in[perm[i]]`, the flag marks negation.
    signed_perm: Option<Vec<(usize, bool)>>,
}

impl Isometry {
    pub fn identity(n: usize) -> Self {
        Self::from_signed_permutation((0..n).map(|i| (i, false)).collect())
    }

    pub fn from_signed_permutation(perm: Vec<(usize, bool)>) -> Self {
        let n = perm.len();
        let mut matrix = vec![0.0; n * n];
        for (i, &(j, neg)) in perm.iter().enumerate() {
            matrix[i * n + j] = if neg { -1.0 } else { 1.0 };
        }
        Isometry { dim: n, matrix, signed_perm: Some(perm) }
    }

    /// Builds an isometry from a row-major orthogonal matrix.
    pub fn from_matrix(dim: usize, matrix: Vec<f64>, tol: Tolerance) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: matrix.len() });
        }
        for i in 0..dim {
            for j in 0..dim {
                let dot: f64 = (0..dim).map(|k| matrix[i * dim + k] * matrix[j * dim + k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if !tol.eq(dot, want) {
                    return Err(Error::Unsupported("matrix is not orthogonal".into()));
                }
            }
        }
        let signed_perm = (0..dim)
            .map(|i| {
                let row = &matrix[i * dim..(i + 1) * dim];
                let nz: Vec<usize> = (0..dim).filter(|&k| row[k] != 0.0).collect();
                (nz.len() == 1 && row[nz[0]].abs() == 1.0).then(|| (nz[0], row[nz[0]] < 0.0))
            })
            .collect();
        Ok(Isometry { dim, matrix, signed_perm })
    }

    /// Counterclockwise rotation of the plane by `theta` radians.
    pub fn rotation_2d(theta: f64) -> Self {
        let [[a, b], [c, d]] = rotation_2d(theta);
        Isometry::from_matrix(2, vec![a, b, c, d], Tolerance(1e-9)).expect("rotation is orthogonal")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn signed_permutation(&self) -> Option<&[(usize, bool)]> {
        self.signed_perm.as_deref()
    }

    pub fn is_orientation_reversing(&self) -> bool {
        determinant(self.dim, &self.matrix) < 0.0
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n).map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let n = self.dim;
        assert_eq!(n, other.dim, "isometry dimensions differ");
        if let (Some(a), Some(b)) = (&self.signed_perm, &other.signed_perm) {
            let perm = a.iter().map(|&(j, na)| (b[j].0, na ^ b[j].1)).collect();
            return Isometry::from_signed_permutation(perm);
        }
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n).map(|k| self.matrix[i * n + k] * other.matrix[k * n + j]).sum();
            }
        }
        Isometry { dim: n, matrix: m, signed_perm: None }
    }
}

/// 2×2 rotation matrix `[[cos, -sin], [sin, cos]]`.
pub fn rotation_2d(theta: f64) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [[c, -s], [s, c]]
}

fn determinant(n: usize, m: &[f64]) -> f64 {
    match n {
        0 => 1.0,
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => {
            // Gaussian elimination with partial pivoting
            let mut a = m.to_vec();
            let mut det = 1.0;
            for c in 0..n {
                let p = (c..n).max_by(|&i, &j| a[i * n + c].abs().total_cmp(&a[j * n + c].abs())).unwrap();
                if a[p * n + c] == 0.0 {
                    return 0.0;
                }
                if p != c {
                    for k in 0..n {
                        a.swap(p * n + k, c * n + k);
                    }
                    det = -det;
                }
                det *= a[c * n + c];
                for r in c + 1..n {
                    let f = a[r * n + c] / a[c * n + c];
                    for k in c..n {
                        a[r * n + k] -= f * a[c * n + k];
                    }
                }
            }
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3};

    #[test]
    fn projections() {
        let x_axis = Subspace::axes(2, &[0]).unwrap();
        assert_eq!(x_axis.project(&Vector::new([1.0, 2.0])).unwrap(), Vector::new([1.0, 0.0]));
        let o = Subspace::origin(2);
        assert_eq!(o.project(&Vector::new([3.0, 4.0])).unwrap(), Vector::new([0.0, 0.0]));
        let diag = Subspace::new(2, vec![Vector::new([FRAC_1_SQRT_2, FRAC_1_SQRT_2])], Tolerance::default()).unwrap();
        let p = diag.project(&Vector::new([1.0, 1.0])).unwrap();
        assert_abs_diff_eq!(p[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 1.0, epsilon = 1e-12);
        assert!(x_axis.project(&Vector::new([1.0, 2.0, 3.0])).is_err());
    }

    #[test]
    fn reflections() {
        let x_axis = Subspace::axes(2, &[0]).unwrap();
        assert_eq!(x_axis.reflect(&Vector::new([1.0, 2.0])).unwrap(), Vector::new([1.0, -2.0]));
        assert_eq!(x_axis.reflect(&Vector::new([5.0, 0.0])).unwrap(), Vector::new([5.0, 0.0]));
        let o = Subspace::origin(2);
        assert_eq!(o.reflect(&Vector::new([3.0, 4.0])).unwrap(), Vector::new([-3.0, -4.0]));
        assert!(x_axis.reflect(&Vector::new([1.0])).is_err());
    }

    #[test]
    fn rotations() {
        let r = rotation_2d(0.0);
        assert_eq!(r, [[1.0, -0.0], [0.0, 1.0]]);
        let q = Isometry::rotation_2d(FRAC_PI_2).apply(&[1.0, 0.0]);
        assert_abs_diff_eq!(q[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q[1], 1.0, epsilon = 1e-15);
        let q = Isometry::rotation_2d(FRAC_PI_3).apply(&[1.0, 0.0]);
        assert_abs_diff_eq!(q[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(q[1], 3f64.sqrt() / 2.0, epsilon = 1e-15);
        let m = rotation_2d(0.7);
        assert_abs_diff_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn axis_detection() {
        let s = Subspace::new(3, vec![Vector::new([0.0, -1.0, 0.0])], Tolerance::default()).unwrap();
        assert_eq!(s.axis_indices(), Some(&[1usize][..]));
        assert_eq!(s.orthogonal_axes(), Some(vec![0, 2]));
        assert!(!Subspace::line_2d(0.3).is_axis_aligned());
        assert!(Subspace::line_2d(FRAC_PI_2).is_axis_aligned());
        assert!(Subspace::axes(2, &[0, 1]).is_err());
        assert!(Subspace::new(2, vec![Vector::new([1.0, 1.0])], Tolerance::default()).is_err());
    }

    #[test]
    fn composition_of_axis_reflections_is_exact() {
        let rx = Subspace::axes(2, &[0]).unwrap().reflection();
        let ry = Subspace::axes(2, &[1]).unwrap().reflection();
        let c = ry.compose(&rx);
        assert_eq!(c.signed_permutation(), Some(&[(0, true), (1, true)][..]));
        assert!(!c.is_orientation_reversing());
        assert!(rx.is_orientation_reversing());
    }

    fn arb_vec() -> impl Strategy<Value = Vector> {
        prop::collection::vec(-100.0f64..100.0, 3).prop_map(Vector)
    }

    proptest! {
        #[test]
        fn reflect_is_isometric_involution(x in arb_vec(), y in arb_vec(), a in 0.0f64..6.3, b in 0.0f64..6.3) {
            let u = Vector::new([a.cos() * b.sin(), a.sin() * b.sin(), b.cos()]);
            let h = Subspace::new(3, vec![u], Tolerance(1e-9)).unwrap();
            let rx = h.reflect(&x).unwrap();
            let ry = h.reflect(&y).unwrap();
            prop_assert!((rx.dist(&ry) - x.dist(&y)).abs() < 1e-9);
            prop_assert!(h.reflect(&rx).unwrap().dist(&x) < 1e-9);
            let p = h.project(&x).unwrap();
            prop_assert!(h.project(&p).unwrap().dist(&p) < 1e-9);
        }

        #[test]
        fn axis_reflection_exact_on_dyadics(m in prop::collection::vec(-1000i32..1000, 3), k in 0usize..3) {
            let x = Vector(m.iter().map(|&v| v as f64 / 64.0).collect());
            let h = Subspace::axes(3, &[k]).unwrap();
            prop_assert_eq!(h.reflect(&h.reflect(&x).unwrap()).unwrap(), x);
        }
    }
}
