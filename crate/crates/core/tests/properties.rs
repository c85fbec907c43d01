use proptest::prelude::*;

use symlab_core::{
    central_symmetrize, minkowski_symmetrize, steiner_symmetrize_grid, ConvexPolygon, Dyadic, FinitePointSet, GridSet, SetRep,
    Subspace,
};

fn lattice_points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-64i64..=64, dim), 1..=max)
}

fn exact_set(dim: usize, pts: &[Vec<i64>]) -> FinitePointSet {
    let pts: Vec<Vec<Dyadic>> = pts.iter().map(|p| p.iter().map(|&x| Dyadic::from_int(x)).collect()).collect();
    FinitePointSet::from_dyadic(dim, &pts, -30).unwrap()
}

fn grid(dim: usize, cells: &[Vec<i64>]) -> GridSet {
    GridSet::from_cells(dim, Dyadic::ONE, cells).unwrap()
}

fn axis_subspace(dim: usize, mask: u8) -> Subspace {
    let axes: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
    Subspace::axes(dim, &axes).unwrap()
}

fn points_of(s: &SetRep) -> &FinitePointSet {
    s.as_points().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_commutes_with_symmetrization(pts in lattice_points(2, 10), theta in 0.0..std::f64::consts::PI) {
        let a: SetRep = exact_set(2, &pts).into();
        let h = Subspace::line_2d(theta);
        let (m, err) = minkowski_symmetrize(&a, &h).unwrap();
        let lhs = m.hull_polygon().unwrap();
        let rhs = a.hull_polygon().unwrap().minkowski_symmetrize(&h).unwrap();
        prop_assert!(lhs.hausdorff(&rhs) <= err + 1e-9);
    }

    #[test]
    fn mean_width_is_invariant(pts in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 3..12), theta in 0.0..std::f64::consts::PI) {
        let v: Vec<[f64; 2]> = pts.iter().map(|&(x, y)| [x, y]).collect();
        let p = ConvexPolygon::from_points(&v).unwrap();
        prop_assume!(p.mean_width() > 1e-3);
        let m = p.minkowski_symmetrize(&Subspace::line_2d(theta)).unwrap();
        prop_assert!((m.mean_width() - p.mean_width()).abs() <= 1e-9 * p.mean_width());
    }

    #[test]
    fn translation_moves_symmetral_by_projection(pts in lattice_points(3, 8), v in prop::collection::vec(-32i64..=32, 3), mask in 0u8..7) {
        let a = exact_set(3, &pts);
        let h = axis_subspace(3, mask);
        let shift: Vec<Dyadic> = v.iter().map(|&x| Dyadic::from_int(x)).collect();
        let projected: Vec<Dyadic> = (0..3).map(|k| if mask >> k & 1 == 1 { shift[k] } else { Dyadic::ZERO }).collect();
        let (lhs, _) = minkowski_symmetrize(&a.translate(&shift).unwrap().into(), &h).unwrap();
        let (m, _) = minkowski_symmetrize(&a.into(), &h).unwrap();
        prop_assert_eq!(points_of(&lhs), &points_of(&m).translate(&projected).unwrap());
    }

    #[test]
    fn iterates_grow_after_first_step(pts in lattice_points(2, 5), mask in 0u8..3) {
        let h = axis_subspace(2, mask);
        let (mut cur, _) = minkowski_symmetrize(&exact_set(2, &pts).into(), &h).unwrap();
        for _ in 0..2 {
            let (next, _) = minkowski_symmetrize(&cur, &h).unwrap();
            prop_assert!(points_of(&cur).is_subset_of(points_of(&next)));
            cur = next;
        }
    }

    #[test]
    fn grid_iterates_grow_after_first_step(cells in lattice_points(2, 12), mask in 0u8..3) {
        let h = axis_subspace(2, mask);
        let (k1, _) = minkowski_symmetrize(&grid(2, &cells).into(), &h).unwrap();
        let (k2, _) = minkowski_symmetrize(&k1, &h).unwrap();
        prop_assert!(k1.as_grid().unwrap().is_subset_of(k2.as_grid().unwrap()).unwrap());
    }

    #[test]
    fn steiner_is_idempotent_and_keeps_volume(cells in lattice_points(3, 40), axis in 0usize..3) {
        let g = grid(3, &cells);
        let hyper: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
        let h = Subspace::axes(3, &hyper).unwrap();
        let s = steiner_symmetrize_grid(&g, &h).unwrap();
        prop_assert_eq!(s.volume(), g.volume());
        prop_assert_eq!(steiner_symmetrize_grid(&s, &h).unwrap(), s);
    }

    #[test]
    fn block_and_its_rim_symmetrize_alike(w in 1i64..12, h in 1i64..12, d in 1i64..6, x in -5i64..5, mask in 0u8..7) {
        let b = GridSet::block(3, Dyadic::ONE, [x, 0, -x], [x + w - 1, h - 1, d - 1 - x]).unwrap();
        let sub = axis_subspace(3, mask);
        let (mb, _) = minkowski_symmetrize(&b.clone().into(), &sub).unwrap();
        let (mr, _) = minkowski_symmetrize(&b.rim().into(), &sub).unwrap();
        prop_assert_eq!(mb, mr);
    }

    #[test]
    fn central_symmetral_is_half_difference_body(pts in lattice_points(2, 8)) {
        let a = exact_set(2, &pts);
        let neg: Vec<Vec<i64>> = pts.iter().map(|p| p.iter().map(|x| -x).collect()).collect();
        let diff = a.minkowski_sum(&exact_set(2, &neg)).unwrap().halve().0;
        let (m, err) = central_symmetrize(&a.into()).unwrap();
        prop_assert_eq!(err, 0.0);
        prop_assert_eq!(points_of(&m), &diff);
    }
}

/// With a fixed `H`, `K_1 ⊆ K_2 ⊆ … ⊆ conv(M_H A)`, so the distance to the
/// limit never increases.
#[test]
fn distance_to_limit_is_monotone_on_random_clouds() {
    use rand::{Rng, SeedableRng};
    for seed in 0..100u64 {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(2..=5);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)]).collect();
        let a: SetRep = FinitePointSet::from_points(2, &pts, None).unwrap().into();
        let h = Subspace::line_2d(r.gen_range(0.0..std::f64::consts::PI));
        let (mut cur, mut budget) = minkowski_symmetrize(&a, &h).unwrap();
        let limit: SetRep = cur.hull_polygon().unwrap().into();
        let mut prev = cur.hausdorff_with(&limit, 1e-6).unwrap();
        for _ in 0..2 {
            let (next, e) = minkowski_symmetrize(&cur, &h).unwrap();
            budget += e;
            let d = next.hausdorff_with(&limit, 1e-6).unwrap();
            assert!(d.0 - d.1 <= prev.0 + prev.1 + budget, "seed {seed}: {d:?} after {prev:?}");
            prev = d;
            cur = next;
        }
    }
}
