use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symlab_bench::{annulus, cloud, polygon, shell};
use symlab_core::{fiber_symmetrize, steiner_symmetrize_grid, Subspace};

fn point_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("pointset_sum");
    for n in [64, 256, 1024] {
        let a = cloud(2, n);
        let b2 = cloud(2, n / 2 + 1);
        g.bench_with_input(BenchmarkId::new("2d", n), &n, |bench, _| bench.iter(|| a.minkowski_sum(&b2).unwrap()));
    }
    g.finish();
}

fn grid_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("grid_sum");
    for r in [16, 32, 64] {
        let a = annulus(r);
        g.bench_with_input(BenchmarkId::new("annulus", r), &r, |bench, _| bench.iter(|| a.minkowski_sum(&a).unwrap()));
    }
    for r in [4, 8] {
        let s = shell(r);
        g.bench_with_input(BenchmarkId::new("shell", r), &r, |bench, _| bench.iter(|| s.minkowski_sum(&s).unwrap()));
    }
    g.finish();
}

fn polygon_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("polygon_sum");
    for k in [16, 256, 4096] {
        let (a, b) = (polygon(k, 0.0), polygon(k, 0.1));
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |bench, _| bench.iter(|| a.minkowski_sum(&b)));
    }
    g.finish();
}

fn symmetrization_steps(c: &mut Criterion) {
    let mut g = c.benchmark_group("symmetrize_step");
    let x = Subspace::axes(2, &[0]).unwrap();
    let a = annulus(64);
    g.bench_function("minkowski_grid", |bench| bench.iter(|| a.minkowski_symmetrize(&x).unwrap()));
    g.bench_function("fiber_grid", |bench| bench.iter(|| fiber_symmetrize(&a, &x).unwrap()));
    g.bench_function("steiner_grid", |bench| bench.iter(|| steiner_symmetrize_grid(&a, &x).unwrap()));
    let p = cloud(2, 512);
    let line = Subspace::line_2d(0.3);
    g.bench_function("minkowski_points_oblique", |bench| bench.iter(|| p.minkowski_symmetrize(&line).unwrap()));
    g.finish();
}

criterion_group!(benches, point_sums, grid_sums, polygon_sums, symmetrization_steps);
criterion_main!(benches);
