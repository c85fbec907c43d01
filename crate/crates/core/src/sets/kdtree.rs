//! Static k-d tree for nearest-neighbour distance queries in R^1..R^3.

#[derive(Clone, Debug)]
pub struct KdTree {
    dim: usize,
    points: Vec<[f64; 3]>,
    // implicit balanced tree: each range splits at its midpoint
}

const LEAF: usize = 8;

impl KdTree {
    pub fn new(dim: usize, mut points: Vec<[f64; 3]>) -> Self {
        assert!(!points.is_empty(), "k-d tree needs at least one point");
        build(&mut points[..], 0, dim);
        KdTree { dim, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Euclidean distance from `q` to the nearest stored point.
    pub fn nearest_dist(&self, q: &[f64; 3]) -> f64 {
        let mut best = f64::INFINITY;
        self.search(q, 0, self.points.len(), 0, &mut best);
        best.sqrt()
    }

    fn search(&self, q: &[f64; 3], lo: usize, hi: usize, depth: usize, best: &mut f64) {
        if hi - lo <= LEAF {
            for p in &self.points[lo..hi] {
                let d = sq_dist(self.dim, p, q);
                if d < *best {
                    *best = d;
                }
            }
            return;
        }
        let axis = depth % self.dim;
        let mid = lo + (hi - lo) / 2;
        let pivot = &self.points[mid];
        let d = sq_dist(self.dim, pivot, q);
        if d < *best {
            *best = d;
        }
        let delta = q[axis] - pivot[axis];
        let (near, far) = if delta < 0.0 { ((lo, mid), (mid + 1, hi)) } else { ((mid + 1, hi), (lo, mid)) };
        self.search(q, near.0, near.1, depth + 1, best);
        if delta * delta < *best {
            self.search(q, far.0, far.1, depth + 1, best);
        }
    }
}

fn build(points: &mut [[f64; 3]], depth: usize, dim: usize) {
    let n = points.len();
    if n <= LEAF {
        return;
    }
    let axis = depth % dim;
    let mid = n / 2;
    points.select_nth_unstable_by(mid, |a, b| a[axis].total_cmp(&b[axis]));
    let (left, rest) = points.split_at_mut(mid);
    build(left, depth + 1, dim);
    build(&mut rest[1..], depth + 1, dim);
}

#[inline]
pub(crate) fn sq_dist(dim: usize, a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..dim).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=3 {
            let pts: Vec<[f64; 3]> = (0..500)
                .map(|_| {
                    let mut p = [0.0; 3];
                    for c in p.iter_mut().take(dim) {
                        *c = rng.gen_range(-10.0..10.0);
                    }
                    p
                })
                .collect();
            let tree = KdTree::new(dim, pts.clone());
            for _ in 0..200 {
                let mut q = [0.0; 3];
                for c in q.iter_mut().take(dim) {
                    *c = rng.gen_range(-12.0..12.0);
                }
                let brute = pts.iter().map(|p| sq_dist(dim, p, &q)).fold(f64::INFINITY, f64::min).sqrt();
                assert_eq!(tree.nearest_dist(&q), brute);
            }
        }
    }
}
