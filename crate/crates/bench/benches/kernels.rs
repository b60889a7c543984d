use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockmult_bench::symbol;
use fockmult_core::{
    hardy_norm_grid, left_mult_matrix, make_pair, matricial_norm, operator_norm, MatricialBlock, MonoidSpec, NormConfig,
};

fn bench_make_pair(c: &mut Criterion) {
    let mut group = c.benchmark_group("make_pair");
    let f2 = MonoidSpec::free(2).unwrap();
    let phi = symbol(&f2, 2, 1);
    for depth in [4, 8, 12] {
        group.bench_with_input(BenchmarkId::new("free2", depth), &depth, |b, &k| {
            b.iter(|| make_pair(black_box(&phi), k).unwrap())
        });
    }
    let z2 = MonoidSpec::nonneg_vectors(2).unwrap();
    let psi = symbol(&z2, 1, 2);
    for level in [8, 16, 32] {
        group.bench_with_input(BenchmarkId::new("zplus2", level), &level, |b, &k| {
            b.iter(|| make_pair(black_box(&psi), k).unwrap())
        });
    }
    group.finish();
}

fn bench_operator_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("operator_norm");
    group.sample_size(20);
    let cfg = NormConfig::default();
    let zp = MonoidSpec::nonneg_integers();
    let phi = symbol(&zp, 8, 3);
    for level in [64, 256, 1024] {
        let a = left_mult_matrix(&phi, &zp.window(level).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("zplus_degree8", level), &a, |b, a| {
            b.iter(|| operator_norm(black_box(a), &cfg).unwrap())
        });
    }
    let f2 = MonoidSpec::free(2).unwrap();
    let psi = symbol(&f2, 2, 4);
    for depth in [6, 10] {
        let a = left_mult_matrix(&psi, &f2.window(depth).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("free2", depth), &a, |b, a| {
            b.iter(|| operator_norm(black_box(a), &cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_hardy_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("hardy_norm_grid");
    group.sample_size(10);
    let zp = MonoidSpec::nonneg_integers();
    let phi = symbol(&zp, 8, 5);
    group.bench_function("zplus_65536", |b| {
        b.iter(|| hardy_norm_grid(black_box(&phi), 1 << 16).unwrap())
    });
    let z2 = MonoidSpec::nonneg_vectors(2).unwrap();
    let psi = symbol(&z2, 2, 6);
    group.bench_function("zplus2_1024", |b| {
        b.iter(|| hardy_norm_grid(black_box(&psi), 1024).unwrap())
    });
    group.finish();
}

fn bench_matricial_norm(c: &mut Criterion) {
    let f2 = MonoidSpec::free(2).unwrap();
    let entries: Vec<_> = (0..9).map(|i| symbol(&f2, 1, 10 + i)).collect();
    let x = MatricialBlock::from_symbols(3, 3, &entries, 6).unwrap();
    let cfg = NormConfig::default();
    c.bench_function("matricial_norm/free2_3x3_depth6", |b| {
        b.iter(|| matricial_norm(black_box(&x), &cfg).unwrap())
    });
}

criterion_group!(
    benches,
    bench_make_pair,
    bench_operator_norm,
    bench_hardy_grid,
    bench_matricial_norm
);
criterion_main!(benches);
