//! Sequential against data-parallel execution of the two exhaustive sweeps.
//! Without the `parallel` feature both rows measure the sequential path.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hkdiag::annulus::label_catalog;
use hkdiag::diagram::{enumerate_with, ConstraintSet};
use hkdiag::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| enumerate_with(black_box(ConstraintSet::all()), s))
        });
    }
    group.finish();
}

fn bench_label_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("label_catalog");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(10));
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| label_catalog(s))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate, bench_label_catalog);
criterion_main!(benches);
