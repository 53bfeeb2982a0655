use std::hint::black_box;

use calkit_bench::fixtures;
use calkit_core::coherent::build_coherent_series;
use calkit_core::exactcore::{integer, random_symmetric};
use calkit_core::kernels::kernel_basis;
use calkit_core::numerics::checks::{eigen_residual_scattering, CheckSettings};
use calkit_core::numerics::{bessel_j, sample_chamber};
use calkit_core::operators::apply;
use calkit_core::{ModelKind, MultiPoly};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn raising_operator(c: &mut Criterion) {
    let mut group = c.benchmark_group("raising_operator");
    for (label, params) in fixtures() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_symmetric(&mut rng, params.n(), 6, false);
        group.bench_with_input(BenchmarkId::from_parameter(label), &p, |b, p| {
            b.iter(|| apply(&params, params.raising_tag(), black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_basis");
    for (label, params) in fixtures() {
        group.bench_function(BenchmarkId::new(label, 4), |b| {
            b.iter(|| kernel_basis(&params, black_box(4)).unwrap())
        });
    }
    group.finish();
}

fn coherent(c: &mut Criterion) {
    let mut group = c.benchmark_group("coherent_series");
    let (_, params) = fixtures().remove(1);
    for order in [10u32, 30, 60] {
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &order| {
            b.iter(|| build_coherent_series(&params, &MultiPoly::one(3), integer(1), order).unwrap())
        });
    }
    group.finish();
}

fn numerics(c: &mut Criterion) {
    c.bench_function("bessel_j nu=4.5 x=12", |b| {
        b.iter(|| bessel_j(black_box(4.5), black_box(12.0)).unwrap())
    });
    let (_, params) = fixtures().remove(0);
    let series = build_coherent_series(&params, &MultiPoly::one(2), integer(1), 30).unwrap();
    let points = sample_chamber(ModelKind::An, 2, 0.5, 3.0, 0.2, 20, 42).unwrap();
    let settings = CheckSettings::default();
    c.bench_function("scattering residual N=2, 20 points", |b| {
        b.iter(|| eigen_residual_scattering(&series, &points, &settings).unwrap())
    });
}

criterion_group!(benches, raising_operator, kernels, coherent, numerics);
criterion_main!(benches);
