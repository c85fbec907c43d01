//! Convex polygons in vertex representation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Isometry, Subspace};

/// Relative tolerance below which consecutive edges count as collinear.
const COLLINEAR_REL: f64 = 1e-12;

/// A compact convex set in the plane: counterclockwise, strictly convex
/// vertices starting at the lowest (then leftmost) one. One vertex is a
/// point and two vertices are a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<[f64; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * dx, a[1] + t * dy])
}

impl ConvexPolygon {
    /// Convex hull of the given points (monotone chain; near-collinear
    /// vertices are dropped).
    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidScale("non-finite vertex".into()));
        }
        let mut p = points.to_vec();
        p.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        p.dedup();
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for q in &p {
            for k in 0..2 {
                lo[k] = lo[k].min(q[k]);
                hi[k] = hi[k].max(q[k]);
            }
        }
        let ext = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let eps = COLLINEAR_REL * ext * ext;
        // all points coincide
        if ext == 0.0 || p.len() == 1 {
            return Ok(ConvexPolygon { vertices: vec![p[0]] });
        }
        let chain = |iter: &mut dyn Iterator<Item = &[f64; 2]>| {
            let mut out: Vec<[f64; 2]> = Vec::new();
            for &q in iter {
                while out.len() >= 2 && cross(out[out.len() - 2], out[out.len() - 1], q) <= eps {
                    out.pop();
                }
                out.push(q);
            }
            out
        };
        let mut lower = chain(&mut p.iter());
        let mut upper = chain(&mut p.iter().rev());
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let mut v = lower;
        if v.len() == 2 && dist(v[0], v[1]) <= COLLINEAR_REL * ext {
            v.truncate(1);
        }
        Ok(Self::canonical(v))
    }

    fn canonical(mut v: Vec<[f64; 2]>) -> Self {
        let start = (0..v.len())
            .min_by(|&i, &j| (v[i][1], v[i][0]).partial_cmp(&(v[j][1], v[j][0])).expect("finite"))
            .unwrap_or(0);
        v.rotate_left(start);
        ConvexPolygon { vertices: v }
    }

    /// Axis-aligned rectangle `[x0,x1] × [y0,y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::from_points(&[[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    }

    /// Regular `k`-gon inscribed in the circle of radius `r` about the origin.
    pub fn regular(k: usize, r: f64, phase: f64) -> Result<Self> {
        let pts: Vec<[f64; 2]> =
            (0..k).map(|i| phase + 2.0 * PI * i as f64 / k as f64).map(|t| [r * t.cos(), r * t.sin()]).collect();
        Self::from_points(&pts)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Point or segment.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    fn edges(&self) -> Vec<[f64; 2]> {
        let n = self.vertices.len();
        if n == 1 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                [b[0] - a[0], b[1] - a[1]]
            })
            .collect()
    }

    /// Minkowski sum by merging edge sequences in angle order.
    pub fn minkowski_sum(&self, other: &ConvexPolygon) -> ConvexPolygon {
        let angle = |e: &[f64; 2]| {
            let t = e[1].atan2(e[0]);
            if t < 0.0 { t + 2.0 * PI } else { t }
        };
        let (ea, eb) = (self.edges(), other.edges());
        let mut merged: Vec<(f64, [f64; 2])> = ea.iter().chain(&eb).map(|e| (angle(e), *e)).collect();
        merged.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let s = [self.vertices[0][0] + other.vertices[0][0], self.vertices[0][1] + other.vertices[0][1]];
        let mut pts = vec![s];
        let mut cur = s;
        for (_, e) in &merged {
            cur = [cur[0] + e[0], cur[1] + e[1]];
            pts.push(cur);
        }
        ConvexPolygon::from_points(&pts).expect("nonempty")
    }

    pub fn translate(&self, v: [f64; 2]) -> ConvexPolygon {
        ConvexPolygon { vertices: self.vertices.iter().map(|p| [p[0] + v[0], p[1] + v[1]]).collect() }
    }

    /// Homothety `tA`, `t >= 0`.
    pub fn scale(&self, t: f64) -> Result<ConvexPolygon> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidScale(format!("scale factor {t} must be nonnegative")));
        }
        if t == 0.0 {
            return Ok(ConvexPolygon { vertices: vec![[0.0, 0.0]] });
        }
        Ok(ConvexPolygon { vertices: self.vertices.iter().map(|p| [p[0] * t, p[1] * t]).collect() })
    }

    pub fn apply(&self, iso: &Isometry) -> Result<ConvexPolygon> {
        if iso.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: iso.dim() });
        }
        let pts: Vec<[f64; 2]> = self
            .vertices
            .iter()
            .map(|p| {
                let q = iso.apply(p);
                [q[0], q[1]]
            })
            .collect();
        ConvexPolygon::from_points(&pts)
    }

    pub fn reflect(&self, h: &Subspace) -> Result<ConvexPolygon> {
        self.apply(&h.reflection())
    }

    /// `(1/m) Σ_j A_j P`.
    pub fn isometry_mean(&self, isos: &[Isometry]) -> Result<ConvexPolygon> {
        if isos.is_empty() {
            return Err(Error::InvalidScale("isometry mean of zero terms".into()));
        }
        let mut acc = self.apply(&isos[0])?;
        for iso in &isos[1..] {
            acc = acc.minkowski_sum(&self.apply(iso)?);
        }
        acc.scale(1.0 / isos.len() as f64)
    }

    /// `M_H P = ½(P + R_H P)`.
    pub fn minkowski_symmetrize(&self, h: &Subspace) -> Result<ConvexPolygon> {
        if h.ambient_dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: h.ambient_dim() });
        }
        self.minkowski_sum(&self.reflect(h)?).scale(0.5)
    }

    pub fn support(&self, u: [f64; 2]) -> Result<f64> {
        if u == [0.0, 0.0] {
            return Err(Error::ZeroDirection);
        }
        Ok(self.vertices.iter().map(|p| p[0] * u[0] + p[1] * u[1]).fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let s: f64 = (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum();
        s / 2.0
    }

    /// Boundary length; a segment counts both sides.
    pub fn perimeter(&self) -> f64 {
        self.edges().iter().map(|e| e[0].hypot(e[1])).sum()
    }

    /// Mean width `perimeter / π` (Cauchy's formula).
    pub fn mean_width(&self) -> f64 {
        self.perimeter() / PI
    }

    /// Diameter by rotating calipers.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        match n {
            1 => return 0.0,
            2 => return dist(v[0], v[1]),
            _ => {}
        }
        let mut best: f64 = 0.0;
        let mut j = 1;
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            while cross(a, b, v[(j + 1) % n]).abs() > cross(a, b, v[j]).abs() {
                j = (j + 1) % n;
            }
            best = best.max(dist(a, v[j])).max(dist(b, v[j]));
        }
        best
    }

    /// Closed-set membership within `tol`.
    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        self.dist_to(p) <= tol
    }

    /// Euclidean distance from `p` to the polygon (0 inside).
    pub fn dist_to(&self, p: [f64; 2]) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        if n == 1 {
            return dist(p, v[0]);
        }
        if n >= 3 && (0..n).all(|i| cross(v[i], v[(i + 1) % n], p) >= 0.0) {
            return 0.0;
        }
        (0..n).map(|i| seg_dist(p, v[i], v[(i + 1) % n])).fold(f64::INFINITY, f64::min)
    }

    /// Exact Hausdorff distance `max_u |h_A(u) - h_B(u)|`.
    ///
    /// On each arc between consecutive edge normals of either polygon both
    /// support points are fixed, so the difference is linear in `u` and its
    /// maximum is at an arc end or at the direction of the vertex difference.
    pub fn hausdorff(&self, other: &ConvexPolygon) -> f64 {
        let normal_angles = |p: &ConvexPolygon| -> Vec<f64> {
            p.edges().iter().filter(|e| e[0] != 0.0 || e[1] != 0.0).map(|e| (-e[0]).atan2(e[1])).collect()
        };
        let mut cuts: Vec<f64> = normal_angles(self).into_iter().chain(normal_angles(other)).collect();
        cuts.push(-PI);
        cuts.push(PI);
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        cuts.dedup();
        let argmax = |p: &ConvexPolygon, u: [f64; 2]| -> [f64; 2] {
            *p.vertices
                .iter()
                .max_by(|a, b| (a[0] * u[0] + a[1] * u[1]).partial_cmp(&(b[0] * u[0] + b[1] * u[1])).expect("finite"))
                .expect("nonempty")
        };
        let diff = |u: [f64; 2]| (self.support(u).unwrap() - other.support(u).unwrap()).abs();
        let mut best: f64 = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let dir = |t: f64| [t.cos(), t.sin()];
            best = best.max(diff(dir(a))).max(diff(dir(b)));
            if b - a <= 0.0 {
                continue;
            }
            let m = dir(0.5 * (a + b));
            let (pa, pb) = (argmax(self, m), argmax(other, m));
            let d = [pa[0] - pb[0], pa[1] - pb[1]];
            for s in [1.0, -1.0] {
                let t = (s * d[1]).atan2(s * d[0]);
                if t > a && t < b {
                    best = best.max(d[0].hypot(d[1]));
                }
            }
        }
        best
    }

    /// `max |v|` over vertices.
    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max)
    }

    /// Radius of the largest origin-centered disk inside the polygon (0 if
    /// the origin is outside or the polygon is degenerate).
    pub fn inradius(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return 0.0;
        }
        (0..n)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                cross(a, b, [0.0, 0.0]) / dist(a, b)
            })
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }

    /// Bounding box `[xmin, ymin, xmax, ymax]`.
    pub fn bbox(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in &self.vertices {
            b[0] = b[0].min(p[0]);
            b[1] = b[1].min(p[1]);
            b[2] = b[2].max(p[0]);
            b[3] = b[3].max(p[1]);
        }
        b
    }

    /// Does the closed axis-aligned box `[x0,x1]×[y0,y1]` meet the polygon?
    /// Separating-axis test over box axes and polygon edge normals.
    pub fn intersects_box(&self, x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
        let b = self.bbox();
        if b[2] < x0 || b[0] > x1 || b[3] < y0 || b[1] > y1 {
            return false;
        }
        let corners = [[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
        let n = self.vertices.len();
        for i in 0..n {
            let (a, c) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let nrm = [c[1] - a[1], a[0] - c[0]];
            if nrm == [0.0, 0.0] {
                continue;
            }
            let proj = |p: &[f64; 2]| p[0] * nrm[0] + p[1] * nrm[1];
            let pmin = self.vertices.iter().map(proj).fold(f64::INFINITY, f64::min);
            let pmax = self.vertices.iter().map(proj).fold(f64::NEG_INFINITY, f64::max);
            let bmin = corners.iter().map(proj).fold(f64::INFINITY, f64::min);
            let bmax = corners.iter().map(proj).fold(f64::NEG_INFINITY, f64::max);
            if bmax < pmin || bmin > pmax {
                return false;
            }
        }
        true
    }
}
