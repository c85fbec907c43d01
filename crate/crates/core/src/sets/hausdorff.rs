//! Hausdorff distance between different representations.
//!
//! Every function returns `(value, error)`: the true distance lies in
//! `[value - error, value + error]`.

use std::collections::BinaryHeap;

use crate::sets::intervals::IntervalUnion;
use crate::sets::kdtree::KdTree;
use crate::sets::polygon::ConvexPolygon;

/// Default sampling resolution relative to the diameter.
pub const DEFAULT_RELATIVE_RESOLUTION: f64 = 1.0 / 2048.0;

#[derive(PartialEq)]
struct Cell {
    upper: f64,
    center: [f64; 2],
    half: f64,
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

/// `sup_{x ∈ P} d(x, S)` for a finite set `S` given by its kd-tree.
///
/// Branch and bound over a quadtree of the polygon's bounding square:
/// `d(·, S)` is 1-Lipschitz, so a square of half-side `s` centered at `c`
/// meeting `P` has values in `d(c, S) ± s√2`. Squares are refined until
/// their half-diagonal is at most `resolution·√2/2`.
pub fn polygon_excess_from_points(p: &ConvexPolygon, tree: &KdTree, resolution: f64) -> (f64, f64) {
    let q = |c: [f64; 2]| tree.nearest_dist(&[c[0], c[1], 0.0]);
    let mut lower = p.vertices().iter().map(|&v| q(v)).fold(0.0, f64::max);
    let b = p.bbox();
    let half = 0.5 * (b[2] - b[0]).max(b[3] - b[1]).max(resolution);
    let center = [0.5 * (b[0] + b[2]), 0.5 * (b[1] + b[3])];
    let min_half = 0.5 * resolution;
    let mut heap = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<Cell>, lower: &mut f64, c: [f64; 2], s: f64| {
        if !p.intersects_box(c[0] - s, c[1] - s, c[0] + s, c[1] + s) {
            return;
        }
        let r = s * std::f64::consts::SQRT_2;
        let f = q(c);
        let inside = p.contains(c, 0.0);
        *lower = lower.max(if inside { f } else { f - r });
        heap.push(Cell { upper: f + r, center: c, half: s });
    };
    push(&mut heap, &mut lower, center, half);
    let mut unresolved: f64 = lower;
    while let Some(cell) = heap.pop() {
        if cell.upper <= lower {
            break;
        }
        if cell.half <= min_half {
            unresolved = unresolved.max(cell.upper);
            // every remaining square is bounded by this one
            break;
        }
        let s = 0.5 * cell.half;
        for (dx, dy) in [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
            push(&mut heap, &mut lower, [cell.center[0] + dx * s, cell.center[1] + dy * s], s);
        }
    }
    let upper = unresolved.max(lower);
    (0.5 * (lower + upper), 0.5 * (upper - lower))
}

/// `sup_{s ∈ S} d(s, P)`, exact up to float rounding.
pub fn points_excess_from_polygon(points: &[[f64; 3]], p: &ConvexPolygon) -> f64 {
    points.iter().map(|s| p.dist_to([s[0], s[1]])).fold(0.0, f64::max)
}

/// Hausdorff distance between a 2-D point set and a polygon.
pub fn points_polygon(points: &[[f64; 3]], p: &ConvexPolygon, resolution: f64) -> (f64, f64) {
    let tree = KdTree::new(2, points.to_vec());
    let (a, err) = polygon_excess_from_points(p, &tree, resolution);
    let b = points_excess_from_polygon(points, p);
    if b >= a + err {
        (b, 0.0)
    } else {
        let hi = a + err;
        let lo = (a - err).max(b);
        (0.5 * (lo + hi), 0.5 * (hi - lo))
    }
}

/// Hausdorff distance between points on a line and an interval union (exact
/// up to float rounding).
pub fn points_intervals(points: &[f64], k: &IntervalUnion) -> f64 {
    let mut pts = points.to_vec();
    pts.sort_by(f64::total_cmp);
    let dist_to_points = |x: f64| {
        let i = pts.partition_point(|&p| p < x);
        let mut d = f64::INFINITY;
        if i < pts.len() {
            d = d.min(pts[i] - x);
        }
        if i > 0 {
            d = d.min(x - pts[i - 1]);
        }
        d
    };
    let mut e_k: f64 = 0.0;
    for &(a, b) in k.intervals() {
        let (a, b) = (a.to_f64(), b.to_f64());
        e_k = e_k.max(dist_to_points(a)).max(dist_to_points(b));
        // interior maxima sit at midpoints of consecutive points
        for w in pts.windows(2) {
            let m = 0.5 * (w[0] + w[1]);
            if m > a && m < b {
                e_k = e_k.max(dist_to_points(m));
            }
        }
    }
    let e_s = pts
        .iter()
        .map(|&x| {
            k.intervals()
                .iter()
                .map(|&(a, b)| {
                    let (a, b) = (a.to_f64(), b.to_f64());
                    if x < a { a - x } else if x > b { x - b } else { 0.0 }
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    e_k.max(e_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    #[test]
    fn lattice_points_against_interval() {
        // d_H({0, 1, ..., k}, [0, k]) = 1/2, checked against dense sampling
        for k in 1..=10 {
            let pts: Vec<f64> = (0..=k).map(|i| i as f64).collect();
            let iv = IntervalUnion::interval(Dyadic::ZERO, Dyadic::from_int(k)).unwrap();
            let d = points_intervals(&pts, &iv);
            assert_eq!(d, 0.5);
            let sampled = (0..=1000 * k)
                .map(|i| i as f64 / 1000.0)
                .map(|x| pts.iter().map(|p| (p - x).abs()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max);
            assert!((sampled - d).abs() < 1e-9);
        }
    }

    #[test]
    fn square_against_its_corners() {
        let sq = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let pts = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]];
        let (v, err) = points_polygon(&pts, &sq, 1.0 / 2048.0);
        // farthest point of the square from its corners is the center
        let want = 0.5f64.sqrt();
        assert!((v - want).abs() <= err + 1e-12, "{v} ± {err}");
        assert!(err <= std::f64::consts::SQRT_2 / 2.0 / 2048.0);
    }

    #[test]
    fn segment_against_points() {
        let seg = ConvexPolygon::from_points(&[[-1.0, 0.0], [1.0, 0.0]]).unwrap();
        let pts: Vec<[f64; 3]> = [-1.0, -0.5, 0.0, 0.5, 1.0].iter().map(|&x| [x, 0.0, 0.0]).collect();
        let (v, err) = points_polygon(&pts, &seg, 1e-4);
        assert!((v - 0.25).abs() <= err + 1e-12);
        let off = vec![[0.0, 3.0, 0.0]];
        let (v, err) = points_polygon(&off, &seg, 1e-4);
        assert!((v - 10f64.sqrt()).abs() <= err + 1e-12);
    }
}
