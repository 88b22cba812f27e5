use bfamily_core::{compute_beta_b, compute_j, compute_j_bvp, compute_j_direct, BETA_MAX};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn j_grids(c: &mut Criterion) {
    let mut g = c.benchmark_group("j_bvp");
    for n in [256usize, 1024, 4096] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, &n| {
            bch.iter(|| compute_j_bvp(black_box(2.0), black_box(1.0), n).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("j_direct");
    for n in [256usize, 1024, 4096] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, &n| {
            bch.iter(|| compute_j_direct(black_box(2.0), black_box(1.0), n).unwrap())
        });
    }
    g.finish();
}

fn j_default(c: &mut Criterion) {
    c.bench_function("compute_j/interior", |b| b.iter(|| compute_j(black_box(2.3), black_box(0.7)).unwrap()));
    c.bench_function("compute_j/degenerate", |b| b.iter(|| compute_j(black_box(2.3), black_box(BETA_MAX)).unwrap()));
}

fn threshold(c: &mut Criterion) {
    let mut g = c.benchmark_group("beta_b");
    g.sample_size(10);
    g.bench_function("b=2", |b| b.iter(|| compute_beta_b(black_box(2.0), 1e-4, 256).unwrap()));
    g.finish();
}

criterion_group!(benches, j_grids, j_default, threshold);
criterion_main!(benches);
