//! Symmetrization maps over every representation.
//!
//! Operations return the symmetral together with a Hausdorff error bound
//! (zero whenever the computation is exact).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::{Isometry, Subspace};
use crate::sets::grid::GridSet;
use crate::sets::SetRep;

/// The symmetrization applied at each step of a schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    /// `M_H K = ½(K + R_H K)`.
    Minkowski,
    /// Central symmetrization inside every `H⊥`-section (grids).
    Fiber,
    /// Grid Steiner symmetrization about a hyperplane.
    Steiner,
    /// The isometry mean of `{id, R_H}`.
    IsometryMean,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Minkowski => "minkowski",
            Operator::Fiber => "fiber",
            Operator::Steiner => "steiner",
            Operator::IsometryMean => "isometry_mean",
        })
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minkowski" => Ok(Operator::Minkowski),
            "fiber" => Ok(Operator::Fiber),
            "steiner" => Ok(Operator::Steiner),
            "isometry_mean" => Ok(Operator::IsometryMean),
            _ => Err(Error::Unsupported(format!("unknown operator `{s}`"))),
        }
    }
}

fn check_dim(a: &SetRep, h: &Subspace) -> Result<()> {
    if a.dim() != h.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: h.ambient_dim() });
    }
    Ok(())
}

/// `M_H A = ½(A + R_H A)`.
pub fn minkowski_symmetrize(a: &SetRep, h: &Subspace) -> Result<(SetRep, f64)> {
    check_dim(a, h)?;
    Ok(match a {
        SetRep::Points(s) => {
            let (m, e) = s.minkowski_symmetrize(h)?;
            (m.into(), e)
        }
        SetRep::Intervals(k) => {
            if h.dim() != 0 {
                return Err(Error::InvalidSubspace("in R^1 the only proper subspace is the origin".into()));
            }
            (k.central_symmetrize().into(), 0.0)
        }
        SetRep::Grid(g) => (g.minkowski_symmetrize(h)?.into(), 0.0),
        SetRep::Polygon(p) => (p.minkowski_symmetrize(h)?.into(), 0.0),
    })
}

/// `M_o A = (A - A) / 2`.
pub fn central_symmetrize(a: &SetRep) -> Result<(SetRep, f64)> {
    minkowski_symmetrize(a, &Subspace::origin(a.dim()))
}

/// Fiber symmetrization of a grid set.
pub fn fiber_symmetrize(a: &GridSet, h: &Subspace) -> Result<GridSet> {
    a.fiber_symmetrize(h)
}

/// Grid Steiner symmetrization about a hyperplane `H`.
pub fn steiner_symmetrize_grid(a: &GridSet, h: &Subspace) -> Result<GridSet> {
    a.steiner_symmetrize(h)
}

/// `(1/m) Σ_j A_j A`.
pub fn isometry_mean(a: &SetRep, isos: &[Isometry]) -> Result<(SetRep, f64)> {
    if isos.is_empty() {
        return Err(Error::InvalidScale("isometry mean of zero terms".into()));
    }
    if let Some(iso) = isos.iter().find(|i| i.dim() != a.dim()) {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: iso.dim() });
    }
    Ok(match a {
        SetRep::Points(s) => {
            let (m, e) = s.isometry_mean(isos)?;
            (m.into(), e)
        }
        SetRep::Grid(g) => (g.isometry_mean(isos)?.into(), 0.0),
        SetRep::Polygon(p) => (p.isometry_mean(isos)?.into(), 0.0),
        SetRep::Intervals(k) => {
            let m = isos.len();
            if !m.is_power_of_two() {
                return Err(Error::Unsupported(format!("interval means need a power-of-two count, got {m}")));
            }
            let mut acc: Option<crate::sets::intervals::IntervalUnion> = None;
            for iso in isos {
                let img = match iso.signed_permutation() {
                    Some([(0, true)]) => k.negate(),
                    Some(_) => k.clone(),
                    None => return Err(Error::NotAxisAligned("interval isometry")),
                };
                acc = Some(match acc {
                    None => img,
                    Some(s) => s.minkowski_sum(&img),
                });
            }
            let s = acc.expect("nonempty");
            (s.scale(Dyadic::pow2(-(m.trailing_zeros() as i32)))?.into(), 0.0)
        }
    })
}

/// Rotation mean `(1/N) Σ_k R_{2πk/N} A` approximating Minkowski–Blaschke
/// symmetrization in the plane.
pub fn blaschke_rotation_mean(a: &SetRep, n: usize) -> Result<(SetRep, f64)> {
    if n == 0 {
        return Err(Error::InvalidScale("rotation mean needs N >= 1".into()));
    }
    match a {
        SetRep::Polygon(_) | SetRep::Points(_) if a.dim() == 2 => {}
        _ => return Err(Error::Unsupported(format!("rotation means need a 2-D polygon or point set, got {}", a.kind()))),
    }
    let rots: Vec<Isometry> = (0..n).map(|k| Isometry::rotation_2d(2.0 * PI * k as f64 / n as f64)).collect();
    isometry_mean(a, &rots)
}

/// One schedule step: the operator applied along subspace `h`.
pub fn apply_operator(op: Operator, a: &SetRep, h: &Subspace) -> Result<(SetRep, f64)> {
    check_dim(a, h)?;
    match op {
        Operator::Minkowski => minkowski_symmetrize(a, h),
        Operator::IsometryMean => isometry_mean(a, &[Isometry::identity(a.dim()), h.reflection()]),
        Operator::Fiber | Operator::Steiner => {
            let g = a
                .as_grid()
                .ok_or_else(|| Error::RepresentationMismatch(format!("{op} symmetrization needs a grid, got {}", a.kind())))?;
            let out = if op == Operator::Fiber { g.fiber_symmetrize(h)? } else { g.steiner_symmetrize(h)? };
            Ok((out.into(), 0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::intervals::IntervalUnion;
    use crate::sets::point_set::FinitePointSet;
    use crate::sets::polygon::ConvexPolygon;
    use approx::assert_relative_eq;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn central_examples() {
        let seg = SetRep::from(IntervalUnion::from_f64(&[(2.0, 5.0)]).unwrap());
        assert_eq!(central_symmetrize(&seg).unwrap().0, SetRep::from(IntervalUnion::from_f64(&[(-1.5, 1.5)]).unwrap()));
        let two = SetRep::from(IntervalUnion::points([d("-1"), d("1")]).unwrap());
        assert_eq!(central_symmetrize(&two).unwrap().0, SetRep::from(IntervalUnion::points([d("-1"), d("0"), d("1")]).unwrap()));
        let k = SetRep::from(IntervalUnion::from_f64(&[(-1.0, -0.5), (0.5, 1.0)]).unwrap());
        let want = IntervalUnion::from_f64(&[(-1.0, -0.5), (-0.25, 0.25), (0.5, 1.0)]).unwrap();
        assert_eq!(central_symmetrize(&k).unwrap().0, SetRep::from(want));
    }

    #[test]
    fn mean_of_two_isometries_is_symmetrization() {
        let s = SetRep::from(FinitePointSet::from_points(2, &[vec![0.25, 1.0], vec![-0.5, 0.75], vec![1.0, -1.0]], None).unwrap());
        let h = Subspace::axes(2, &[0]).unwrap();
        let a = isometry_mean(&s, &[Isometry::identity(2), h.reflection()]).unwrap();
        let b = minkowski_symmetrize(&s, &h).unwrap();
        assert_eq!(a, b);
        assert_eq!(isometry_mean(&s, &[Isometry::identity(2)]).unwrap().0, s);
    }

    #[test]
    fn four_term_mean_is_two_symmetrizations() {
        let s = SetRep::from(FinitePointSet::from_points(2, &[vec![0.25, 1.0], vec![-0.5, 0.75], vec![1.0, -1.5]], None).unwrap());
        let h1 = Subspace::axes(2, &[0]).unwrap();
        let h2 = Subspace::axes(2, &[1]).unwrap();
        let (r1, r2) = (h1.reflection(), h2.reflection());
        let isos = [Isometry::identity(2), r1.clone(), r2.clone(), r2.compose(&r1)];
        let (m4, e) = isometry_mean(&s, &isos).unwrap();
        assert_eq!(e, 0.0);
        let (k1, _) = minkowski_symmetrize(&s, &h1).unwrap();
        let (k2, _) = minkowski_symmetrize(&k1, &h2).unwrap();
        assert_eq!(m4, k2);
        let g = SetRep::from(GridSet::new(2, Dyadic::ONE, [[0, 0, 0], [3, 1, 0], [1, 4, 0]]).unwrap());
        let (g4, _) = isometry_mean(&g, &isos).unwrap();
        let (g1, _) = minkowski_symmetrize(&g, &h1).unwrap();
        assert_eq!(g4, minkowski_symmetrize(&g1, &h2).unwrap().0);
    }

    #[test]
    fn rotation_mean_of_square_keeps_mean_width() {
        let sq = ConvexPolygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        let w = sq.mean_width();
        let (m, _) = blaschke_rotation_mean(&SetRep::from(sq.clone()), 4).unwrap();
        // four quarter-turn copies of a centered square coincide
        assert!(m.as_polygon().unwrap().hausdorff(&sq) < 1e-12);
        let (m8, _) = blaschke_rotation_mean(&SetRep::from(sq.clone()), 8).unwrap();
        let p8 = m8.as_polygon().unwrap();
        assert_relative_eq!(p8.mean_width(), w, max_relative = 1e-12);
        assert_eq!(p8.len(), 8);
        assert_eq!(blaschke_rotation_mean(&SetRep::from(sq.clone()), 1).unwrap().0, SetRep::from(sq));
    }

    #[test]
    fn operator_dispatch_errors() {
        let s = SetRep::from(FinitePointSet::from_points(2, &[vec![0.0, 1.0]], None).unwrap());
        let h = Subspace::axes(2, &[0]).unwrap();
        assert!(matches!(apply_operator(Operator::Fiber, &s, &h), Err(Error::RepresentationMismatch(_))));
        let g = SetRep::from(GridSet::new(2, Dyadic::ONE, [[0, 0, 0]]).unwrap());
        assert!(matches!(apply_operator(Operator::Minkowski, &g, &Subspace::line_2d(0.3)), Err(Error::NotAxisAligned(_))));
        assert!(matches!(blaschke_rotation_mean(&g, 0), Err(Error::InvalidScale(_))));
    }
}
