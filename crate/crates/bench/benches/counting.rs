use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cyclicount_core::{
    count_by_burnside, count_by_enumeration, count_cyclic_subgroups, factorize, local_sum_fast,
    local_sum_naive, FactorLimits, Limits, PrimaryDecomposition, SumPath,
};
use num_bigint::BigUint;

fn local_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_sum");
    for (p, exps) in [(2u64, vec![1, 2, 3]), (3, vec![2, 4, 6]), (7, vec![1, 3, 5, 6])] {
        let label = format!("p{p}_{exps:?}");
        let prime = BigUint::from(p);
        group.bench_with_input(BenchmarkId::new("naive", &label), &exps, |b, exps| {
            b.iter(|| local_sum_naive(black_box(&prime), black_box(exps), u64::MAX).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fast", &label), &exps, |b, exps| {
            b.iter(|| local_sum_fast(black_box(&prime), black_box(exps)).unwrap())
        });
    }
    group.finish();
}

fn methods(c: &mut Criterion) {
    let limits = Limits::default();
    let d = PrimaryDecomposition::from_u64_components(&[(2, &[1, 2, 3]), (3, &[1, 2])]).unwrap();
    let mut group = c.benchmark_group("count_Z2xZ12xZ72");
    group.bench_function("formula-fast", |b| {
        b.iter(|| count_cyclic_subgroups(black_box(&d), SumPath::Fast, &limits).unwrap())
    });
    group.bench_function("formula-naive", |b| {
        b.iter(|| count_cyclic_subgroups(black_box(&d), SumPath::Naive, &limits).unwrap())
    });
    group.bench_function("burnside", |b| b.iter(|| count_by_burnside(black_box(&d), &limits).unwrap()));
    group.bench_function("enumerate", |b| {
        b.iter(|| count_by_enumeration(black_box(&d), &limits).unwrap())
    });
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let limits = FactorLimits::default();
    let semiprime = BigUint::from(4_294_967_291u64) * 4_294_967_279u64;
    c.bench_function("factorize_64bit_semiprime", |b| {
        b.iter(|| factorize(black_box(&semiprime), &limits).unwrap())
    });
}

criterion_group!(benches, local_sums, methods, factorization);
criterion_main!(benches);
