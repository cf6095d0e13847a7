use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use seaweed_bench::{dense_matrix, index_one_specs};
use seaweed_core::contact::{synthesize_contact, verify_certificate};
use seaweed_core::exact;
use seaweed_core::meander::index;
use seaweed_core::seaweed::{materialize_standard, SeaweedSpec};

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    for n in [10, 20, 40] {
        let m = dense_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| exact::det(black_box(m)))
        });
    }
    group.finish();
}

fn meander_census(c: &mut Criterion) {
    let specs = SeaweedSpec::all(8);
    c.bench_function("meander index, all pairs n=8", |b| {
        b.iter(|| specs.iter().filter(|s| index(black_box(s)) == 1).count())
    });
}

fn oracle(c: &mut Criterion) {
    let alg = materialize_standard(&"2|6 / 8".parse().unwrap()).unwrap();
    c.bench_function("randomized index 2|6 / 8", |b| {
        b.iter(|| alg.index_randomized(black_box(5), 1))
    });
}

fn contact(c: &mut Criterion) {
    let mut group = c.benchmark_group("contact");
    for spec in index_one_specs() {
        let id = format!("{}_{}", spec.top(), spec.bottom()).replace('|', "-");
        group.bench_with_input(BenchmarkId::new("synthesize", &id), &spec, |b, s| {
            b.iter(|| synthesize_contact(black_box(s)).unwrap())
        });
        let cert = synthesize_contact(&spec).unwrap();
        group.bench_with_input(BenchmarkId::new("verify", &id), &cert, |b, cert| {
            b.iter(|| verify_certificate(black_box(cert)))
        });
    }
    group.finish();
}

criterion_group!(benches, determinants, meander_census, oracle, contact);
criterion_main!(benches);
