//! Fixtures shared by the criterion benches.

use symlab_core::{ConvexPolygon, Dyadic, FinitePointSet, GridSet};

/// `n` points spread over [-1, 1]^dim on a 2^-10 lattice, from a fixed
/// multiplicative sequence so every run sees the same cloud.
pub fn cloud(dim: usize, n: usize) -> FinitePointSet {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 2049) as f64 / 1024.0 - 1.0
    };
    let points: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| next()).collect()).collect();
    FinitePointSet::from_points(dim, &points, Some(1.0 / 1024.0)).expect("lattice cloud")
}

/// An annulus of cells with outer radius `r` and inner radius `r / 2`.
pub fn annulus(r: i64) -> GridSet {
    let mut cells = Vec::new();
    for x in -r..r {
        for y in -r..r {
            let d2 = (2 * x + 1).pow(2) + (2 * y + 1).pow(2);
            if d2 <= 4 * r * r && 4 * d2 >= 4 * r * r {
                cells.push([x, y, 0]);
            }
        }
    }
    GridSet::new(2, Dyadic::ONE, cells).expect("annulus")
}

/// A hollow cube shell of side `2r`, one cell thick.
pub fn shell(r: i64) -> GridSet {
    let mut cells = Vec::new();
    for x in -r..r {
        for y in -r..r {
            for z in -r..r {
                let edge = |c: i64| c == -r || c == r - 1;
                if edge(x) || edge(y) || edge(z) {
                    cells.push([x, y, z]);
                }
            }
        }
    }
    GridSet::new(3, Dyadic::ONE, cells).expect("shell")
}

/// A regular `k`-gon of circumradius 1.
pub fn polygon(k: usize, phase: f64) -> ConvexPolygon {
    ConvexPolygon::regular(k, 1.0, phase).expect("regular polygon")
}
