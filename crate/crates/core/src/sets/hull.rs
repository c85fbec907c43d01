//! Exact convex hulls of integer lattice points (2-D and 3-D).
//!
//! Orientation predicates run in `i128`. 2-D inputs must satisfy
//! `|x| < 2^61`, 3-D inputs `|x| <= 2^40`, which keeps every determinant
//! below `2^127`.

use std::collections::HashSet;

pub const MAX_COORD_2D: i64 = 1 << 61;
pub const MAX_COORD_3D: i64 = 1 << 40;

#[inline]
fn cross2(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    let (ax, ay) = ((a[0] - o[0]) as i128, (a[1] - o[1]) as i128);
    let (bx, by) = ((b[0] - o[0]) as i128, (b[1] - o[1]) as i128);
    ax * by - ay * bx
}

/// Strictly convex hull in counterclockwise order (Andrew's monotone chain).
/// Collinear boundary points are dropped; 1 or 2 vertices are returned for
/// degenerate inputs.
pub fn hull_2d(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut p: Vec<[i64; 2]> = points.to_vec();
    p.sort_unstable();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross2(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross2(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub(crate) fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) { q - 1 } else { q }
}

pub(crate) fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Tightens `[lo, hi]` by the constraint `alpha * x <= beta` over integers.
fn clip(lo: &mut i128, hi: &mut i128, alpha: i128, beta: i128) {
    match alpha.signum() {
        1 => *hi = (*hi).min(div_floor(beta, alpha)),
        -1 => *lo = (*lo).max(div_ceil(beta, alpha)),
        _ => {
            if beta < 0 {
                *lo = 1;
                *hi = 0;
            }
        }
    }
}

fn to_range(lo: i128, hi: i128) -> Option<(i64, i64)> {
    (lo <= hi).then(|| (lo.max(i64::MIN as i128) as i64, hi.min(i64::MAX as i128) as i64))
}

/// Integer `x` with `(x, y)` inside a full-dimensional CCW hull polygon.
pub fn hull_2d_x_interval(hull: &[[i64; 2]], y: i64) -> Option<(i64, i64)> {
    let n = hull.len();
    assert!(n >= 3, "hull polygon must be full-dimensional");
    let (mut lo, mut hi) = (i64::MIN as i128, i64::MAX as i128);
    for i in 0..n {
        let (a, b) = (hull[i], hull[(i + 1) % n]);
        // cross(a, b, p) >= 0  <=>  (by-ay) x <= (bx-ax)(y-ay) + (by-ay) ax
        let alpha = (b[1] - a[1]) as i128;
        let beta = (b[0] - a[0]) as i128 * (y - a[1]) as i128 + alpha * a[0] as i128;
        clip(&mut lo, &mut hi, alpha, beta);
    }
    to_range(lo, hi)
}

/// Is `q` inside (or on) the CCW hull polygon?
pub fn hull_2d_contains(hull: &[[i64; 2]], q: [i64; 2]) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == q,
        2 => {
            cross2(hull[0], hull[1], q) == 0
                && (0..2).all(|i| q[i] >= hull[0][i].min(hull[1][i]) && q[i] <= hull[0][i].max(hull[1][i]))
        }
        n => (0..n).all(|i| cross2(hull[i], hull[(i + 1) % n], q) >= 0),
    }
}

#[inline]
fn sub3(a: [i64; 3], b: [i64; 3]) -> [i128; 3] {
    [(a[0] - b[0]) as i128, (a[1] - b[1]) as i128, (a[2] - b[2]) as i128]
}

#[inline]
fn cross3(u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

#[inline]
fn dot3(u: [i128; 3], v: [i128; 3]) -> i128 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

#[derive(Clone, Debug)]
struct Face {
    v: [usize; 3],
    normal: [i128; 3],
    offset: i128,
}

impl Face {
    fn side(&self, p: [i64; 3]) -> i128 {
        dot3(self.normal, [p[0] as i128, p[1] as i128, p[2] as i128]) - self.offset
    }
}

/// Hull of a full-dimensional 3-D point set.
#[derive(Clone, Debug)]
pub struct Hull3 {
    points: Vec<[i64; 3]>,
    faces: Vec<Face>,
}

/// Result of a 3-D hull computation.
#[derive(Clone, Debug)]
pub enum Hull3d {
    Full(Hull3),
    /// All points are coplanar (or collinear); the extreme points are given.
    Flat(Vec<[i64; 3]>),
}

impl Hull3d {
    pub fn extreme_points(&self) -> Vec<[i64; 3]> {
        match self {
            Hull3d::Full(h) => h.extreme_points(),
            Hull3d::Flat(p) => p.clone(),
        }
    }
}

impl Hull3 {
    /// Is `q` inside or on the hull?
    pub fn contains(&self, q: [i64; 3]) -> bool {
        self.faces.iter().all(|f| f.side(q) <= 0)
    }

    /// Hull vertices lying on at least three distinct facet planes.
    pub fn extreme_points(&self) -> Vec<[i64; 3]> {
        let mut normals: Vec<Vec<[i128; 3]>> = vec![Vec::new(); self.points.len()];
        for f in &self.faces {
            let n = reduce(f.normal);
            for &v in &f.v {
                if !normals[v].contains(&n) {
                    normals[v].push(n);
                }
            }
        }
        let mut out: Vec<[i64; 3]> =
            (0..self.points.len()).filter(|&i| normals[i].len() >= 3).map(|i| self.points[i]).collect();
        out.sort_unstable();
        out
    }

    /// Integer `x` with `(x, y, z)` inside the hull.
    pub fn x_interval(&self, y: i64, z: i64) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (i64::MIN as i128, i64::MAX as i128);
        for f in &self.faces {
            let beta = f.offset - f.normal[1] * y as i128 - f.normal[2] * z as i128;
            clip(&mut lo, &mut hi, f.normal[0], beta);
        }
        to_range(lo, hi)
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

fn reduce(n: [i128; 3]) -> [i128; 3] {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(gcd(n[0], n[1]), n[2]);
    if g == 0 {
        n
    } else {
        [n[0] / g, n[1] / g, n[2] / g]
    }
}

/// Convex hull of integer points in R^3 (incremental, exact).
pub fn hull_3d(points: &[[i64; 3]]) -> Hull3d {
    let mut p: Vec<[i64; 3]> = points.to_vec();
    p.sort_unstable();
    p.dedup();
    assert!(!p.is_empty(), "hull of an empty set");
    assert!(
        p.iter().all(|q| q.iter().all(|c| c.abs() <= MAX_COORD_3D)),
        "3-D hull coordinates out of exact range"
    );
    let a = p[0];
    let Some(&b) = p.iter().find(|&&q| q != a) else {
        return Hull3d::Flat(vec![a]);
    };
    let ab = sub3(b, a);
    let Some(&c) = p.iter().find(|&&q| cross3(ab, sub3(q, a)) != [0, 0, 0]) else {
        // collinear: lexicographic extremes along the line
        return Hull3d::Flat(vec![p[0], p[p.len() - 1]]);
    };
    let nrm = cross3(ab, sub3(c, a));
    let Some(&d) = p.iter().find(|&&q| dot3(nrm, sub3(q, a)) != 0) else {
        return Hull3d::Flat(flat_hull(&p, nrm));
    };

    let mut pts = vec![a, b, c, d];
    // 4 * centroid of the initial tetrahedron, strictly interior forever
    let inner4: [i128; 3] = std::array::from_fn(|k| (a[k] + b[k] + c[k] + d[k]) as i128);
    let make = |pts: &[[i64; 3]], i: usize, j: usize, k: usize| -> Face {
        let (pi, pj, pk) = (pts[i], pts[j], pts[k]);
        let mut n = cross3(sub3(pj, pi), sub3(pk, pi));
        let pi128 = [pi[0] as i128, pi[1] as i128, pi[2] as i128];
        let toward = [inner4[0] - 4 * pi128[0], inner4[1] - 4 * pi128[1], inner4[2] - 4 * pi128[2]];
        let mut v = [i, j, k];
        if dot3(n, toward) > 0 {
            n = [-n[0], -n[1], -n[2]];
            v = [i, k, j];
        }
        Face { v, normal: n, offset: dot3(n, pi128) }
    };
    let mut faces = vec![make(&pts, 0, 1, 2), make(&pts, 0, 1, 3), make(&pts, 0, 2, 3), make(&pts, 1, 2, 3)];

    for &q in &p {
        if q == a || q == b || q == c || q == d {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| f.side(q) > 0).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for e in 0..3 {
                edges.insert((f.v[e], f.v[(e + 1) % 3]));
            }
        }
        let qi = pts.len();
        pts.push(q);
        let mut next: Vec<Face> = faces.iter().zip(&visible).filter(|(_, &v)| !v).map(|(f, _)| f.clone()).collect();
        let mut horizon: Vec<(usize, usize)> =
            edges.iter().copied().filter(|&(u, v)| !edges.contains(&(v, u))).collect();
        horizon.sort_unstable();
        for (u, v) in horizon {
            next.push(make(&pts, u, v, qi));
        }
        faces = next;
    }
    Hull3d::Full(Hull3 { points: pts, faces })
}

fn flat_hull(p: &[[i64; 3]], normal: [i128; 3]) -> Vec<[i64; 3]> {
    // project along the dominant normal axis, hull in 2-D, lift back
    let drop = (0..3).max_by_key(|&k| normal[k].abs()).unwrap();
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let proj: Vec<[i64; 2]> = p.iter().map(|q| [q[keep[0]], q[keep[1]]]).collect();
    let h = hull_2d(&proj);
    let mut out: Vec<[i64; 3]> =
        p.iter().filter(|q| h.contains(&[q[keep[0]], q[keep[1]]])).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_with_interior_point() {
        let h = hull_2d(&[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0], [1, 1]]);
        assert_eq!(h, vec![[0, 0], [1, 0], [1, 1], [0, 1]]);
        let h = hull_2d(&[[0, 0], [2, 0], [2, 2], [0, 2], [1, 1], [1, 0]]);
        assert_eq!(h.len(), 4);
        assert!(hull_2d_contains(&h, [1, 1]));
        assert!(!hull_2d_contains(&h, [3, 1]));
    }

    #[test]
    fn x_intervals_are_exact() {
        let tri = hull_2d(&[[0, 0], [4, 0], [0, 4]]);
        assert_eq!(hull_2d_x_interval(&tri, 1), Some((0, 3)));
        assert_eq!(hull_2d_x_interval(&tri, 4), Some((0, 0)));
        assert_eq!(hull_2d_x_interval(&tri, 5), None);
        let tet = hull_3d(&[[0, 0, 0], [6, 0, 0], [0, 6, 0], [0, 0, 6]]);
        let Hull3d::Full(t) = tet else { panic!() };
        assert_eq!(t.x_interval(1, 1), Some((0, 4)));
        assert_eq!(t.x_interval(-1, 0), None);
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_ceil(7, -2), -3);
    }

    #[test]
    fn collinear_and_single() {
        assert_eq!(hull_2d(&[[-1, 0], [0, 0], [1, 0]]), vec![[-1, 0], [1, 0]]);
        assert_eq!(hull_2d(&[[5, 5]]), vec![[5, 5]]);
    }

    #[test]
    fn cube_corners_are_extreme() {
        let mut pts = Vec::new();
        for x in 0..=3 {
            for y in 0..=3 {
                for z in 0..=3 {
                    pts.push([x, y, z]);
                }
            }
        }
        let h = hull_3d(&pts);
        let ext = h.extreme_points();
        assert_eq!(ext.len(), 8);
        let Hull3d::Full(h) = h else { panic!("cube is full-dimensional") };
        assert!(h.contains([1, 2, 3]));
        assert!(!h.contains([4, 0, 0]));
    }

    #[test]
    fn flat_3d_inputs() {
        let h = hull_3d(&[[0, 0, 1], [2, 0, 1], [0, 2, 1], [1, 1, 1], [2, 2, 1]]);
        assert_eq!(h.extreme_points(), vec![[0, 0, 1], [0, 2, 1], [2, 0, 1], [2, 2, 1]]);
        let h = hull_3d(&[[0, 0, 0], [1, 1, 1], [2, 2, 2]]);
        assert_eq!(h.extreme_points(), vec![[0, 0, 0], [2, 2, 2]]);
    }

    #[test]
    fn random_points_inside_hull() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<[i64; 3]> = (0..300).map(|_| [rng.gen_range(-50..50), rng.gen_range(-50..50), rng.gen_range(-50..50)]).collect();
        let Hull3d::Full(h) = hull_3d(&pts) else { panic!() };
        assert!(pts.iter().all(|&q| h.contains(q)));
        // every extreme point is a strict maximizer of some direction: check
        // it is outside the hull of the others
        let ext = h.extreme_points();
        for (i, &e) in ext.iter().enumerate().take(10) {
            let others: Vec<[i64; 3]> = ext.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q).collect();
            let Hull3d::Full(ho) = hull_3d(&others) else { panic!() };
            assert!(!ho.contains(e));
        }
    }
}
