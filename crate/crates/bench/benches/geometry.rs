use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use pgcone::counting::{t_closed_form, TypeParameters};
use pgcone::spectra::{is_blocking_with_workers, spectrum_with_workers};
use pgcone::{recognize_cone, Field};
use pgcone_bench::{geometry, maxarc_cone_pg5_4, unital_cone_pg4_4};

fn construction(c: &mut Criterion) {
    c.bench_function("field GF(64)", |b| b.iter(|| Field::from_order(black_box(64)).unwrap()));
    c.bench_function("geometry PG(5,4)", |b| b.iter(|| geometry(black_box(5), 4)));
}

fn spectra(c: &mut Criterion) {
    let (g, k) = maxarc_cone_pg5_4();
    let mut group = c.benchmark_group("maxarc cone PG(5,4)");
    group.sample_size(10);
    for workers in [1, 4] {
        group.bench_with_input(BenchmarkId::new("hyperplane spectrum", workers), &workers, |b, &w| {
            b.iter(|| spectrum_with_workers(&g, &k, 4, w).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("plane blocking", workers), &workers, |b, &w| {
            b.iter(|| is_blocking_with_workers(&g, &k, 2, w).unwrap())
        });
    }
    group.finish();
}

fn recognition(c: &mut Criterion) {
    let (g, k) = unital_cone_pg4_4();
    c.bench_function("recognize unital cone PG(4,4)", |b| b.iter(|| recognize_cone(&g, black_box(&k))));
}

fn counting(c: &mut Criterion) {
    let params = TypeParameters::new(21, 101, 149, 5, 4).unwrap();
    let k = BigInt::from(405);
    c.bench_function("closed form t-values", |b| b.iter(|| t_closed_form(&params, black_box(&k)).unwrap()));
}

criterion_group!(benches, construction, spectra, recognition, counting);
criterion_main!(benches);
