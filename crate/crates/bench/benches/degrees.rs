//! Benchmarks for the hot paths: quantum products, engine evaluations,
//! eigendecompositions, and the high-precision synthesis.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use vtev_core::engine::{insertion_product, vtev};
use vtev_core::formulas::e7_form;
use vtev_core::spectral::eigen_decompose;
use vtev_core::Ring;

fn bench_quantum_products(c: &mut Criterion) {
    let gr27 = Ring::grassmannian(2, 7).unwrap();
    let gr37 = Ring::grassmannian(3, 7).unwrap();

    c.bench_function("insertion_product gr:2,7 g=2 n=6", |b| {
        b.iter(|| insertion_product(&gr27, 2, 6).unwrap())
    });
    c.bench_function("vtev gr:3,7 g=8 n=7", |b| {
        b.iter(|| vtev(&gr37, 8, 7).unwrap())
    });
}

fn bench_complete_intersections(c: &mut Criterion) {
    let three_quadrics = Ring::complete_intersection(4, vec![2, 2, 2]).unwrap();
    c.bench_function("vtev ci:4:2,2,2 g=4 n=2", |b| {
        b.iter(|| vtev(&three_quadrics, 4, 2).unwrap())
    });
}

fn bench_spectral(c: &mut Criterion) {
    let gr26 = Ring::grassmannian(2, 6).unwrap();
    let gr27 = Ring::grassmannian(2, 7).unwrap();

    c.bench_function("eigen_decompose gr:2,6 (exact surds)", |b| {
        b.iter_batched(
            || gr26.clone(),
            |r| eigen_decompose(&r, 64).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("eigen_decompose gr:2,7 (64 digits)", |b| {
        b.iter_batched(
            || gr27.clone(),
            |r| eigen_decompose(&r, 64).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_freudenthal(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesis");
    group.sample_size(10);
    group.bench_function("e7_form 64 digits", |b| b.iter(|| e7_form(64).unwrap()));
    group.finish();
}

criterion_group!(
    benches,
    bench_quantum_products,
    bench_complete_intersections,
    bench_spectral,
    bench_freudenthal
);
criterion_main!(benches);
