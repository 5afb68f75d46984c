use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zeta_tails::tails::{evaluate_formula, formula_for_arity, tail_product_formula};
use zeta_tails::ExponentList;

fn bench_generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("formula_for_arity");
    group.sample_size(10);
    for k in [2, 4, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| formula_for_arity(black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn bench_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_formula");
    for exps in [vec![2.0, 3.0], vec![2.5, 1.7, 1.9], vec![2.0, 2.5, 3.0, 3.5]] {
        let list = ExponentList::new(exps.clone()).unwrap();
        let formula = tail_product_formula(&list).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exps:?}")), &list, |b, list| {
            b.iter(|| evaluate_formula(&formula, black_box(list), 1e-9).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_generation, bench_evaluation);
criterion_main!(benches);
