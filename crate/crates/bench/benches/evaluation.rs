use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zeta_tails::numerics::{brute_tail_product_sum, mzv, mzv_integral, zeta};
use zeta_tails::{ExponentList, MzvIndex};

fn bench_zeta(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta");
    for eps in [1e-9, 1e-13] {
        group.bench_with_input(BenchmarkId::from_parameter(eps), &eps, |b, &eps| {
            b.iter(|| zeta(black_box(2.5), eps).unwrap())
        });
    }
    group.finish();
}

fn bench_mzv(c: &mut Criterion) {
    let mut group = c.benchmark_group("mzv");
    for args in [vec![2.0, 1.0], vec![2.5, 1.7, 1.3], vec![2.0, 1.0, 1.0, 1.0, 1.0]] {
        let index = MzvIndex::new(args.clone()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{args:?}")), &index, |b, index| {
            b.iter(|| mzv(black_box(index), 1e-10).unwrap())
        });
    }
    group.finish();
}

fn bench_brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_tail_product_sum");
    for exps in [vec![2.0, 2.0], vec![1.6, 1.8, 2.2], vec![2.0, 2.0, 2.0, 2.0]] {
        let list = ExponentList::new(exps.clone()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exps:?}")), &list, |b, list| {
            b.iter(|| brute_tail_product_sum(black_box(list), 1e-10).unwrap())
        });
    }
    group.finish();
}

fn bench_integral(c: &mut Criterion) {
    c.bench_function("mzv_integral/(2.5,1.5)", |b| {
        b.iter(|| mzv_integral(black_box(2.5), black_box(1.5), 1e-9).unwrap())
    });
}

criterion_group!(benches, bench_zeta, bench_mzv, bench_brute, bench_integral);
criterion_main!(benches);
