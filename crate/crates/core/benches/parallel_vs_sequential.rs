use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twistroot::enumeration::{degree_spectrum_with, enumerate_datasets_with};
use twistroot::symplectic::{alpha1_twist, centralizer_sqrt_search, standard_j};
use twistroot::{BoundaryConvention, Exec};

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("degree_spectrum");
    for g in [6i64, 10] {
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, g), &g, |b, &g| b.iter(|| degree_spectrum_with(black_box(g), &exec)));
        }
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_datasets");
    for (g, n) in [(10i64, 3i64), (10, 5)] {
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, format!("g{g}_n{n}")), &(g, n), |b, &(g, n)| {
                b.iter(|| enumerate_datasets_with(black_box(g), black_box(n), BoundaryConvention::Unordered, &exec))
            });
        }
    }
    group.finish();
}

fn sqrt_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("centralizer_sqrt_search");
    let form = standard_j(2);
    let s = alpha1_twist(2);
    for bound in [2i64, 3] {
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, bound), &bound, |b, &bound| {
                b.iter(|| centralizer_sqrt_search(black_box(&s), &form, bound, &exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, spectrum, enumerate, sqrt_search);
criterion_main!(benches);
