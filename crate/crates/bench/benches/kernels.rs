use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gossiplab::machinery::{find_all_barriers, force_barrier};
use gossiplab::rng::seeded;
use gossiplab::structure::{exact_expansion, heuristic_expansion};
use gossiplab::urn::urn_sample;
use gossiplab::{generate, run_push_pull, Family, UrnSpec};
use gossiplab_bench::{grown, grown_adjacency};

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for (family, k) in [(Family::KTree, 2), (Family::KTree, 4), (Family::KApollonian, 3)] {
        group.bench_with_input(BenchmarkId::new(format!("{family}-k{k}"), 10_000), &10_000, |b, &n| {
            let mut rng = seeded(1);
            b.iter(|| generate(family, k, n, &mut rng).unwrap());
        });
    }
    group.finish();
}

fn push_pull(c: &mut Criterion) {
    let mut group = c.benchmark_group("push_pull");
    for n in [1_000, 10_000, 100_000] {
        let (_, a) = grown_adjacency(Family::KTree, 2, n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            let mut rng = seeded(3);
            b.iter(|| run_push_pull(a, 0, usize::MAX, &mut rng).unwrap());
        });
    }
    group.finish();
}

fn expansion(c: &mut Criterion) {
    let (_, small) = grown_adjacency(Family::KTree, 2, 16, 4);
    c.bench_function("exact_expansion/18", |b| b.iter(|| exact_expansion(black_box(&small)).unwrap()));
    let g = grown(Family::KTree, 2, 10_000, 5);
    c.bench_function("heuristic_expansion/10000", |b| b.iter(|| heuristic_expansion(black_box(&g)).unwrap()));
}

fn barriers(c: &mut Criterion) {
    let g = grown(Family::KTree, 2, 10_000, 6);
    c.bench_function("find_all_barriers/10000", |b| b.iter(|| find_all_barriers(black_box(&g), 4)));
    c.bench_function("force_barrier/10000", |b| {
        let mut rng = seeded(7);
        b.iter(|| force_barrier(2, 10_000, &mut rng).unwrap());
    });
}

fn urns(c: &mut Criterion) {
    let spec = UrnSpec::polya(1, 2, 1, 10_000);
    c.bench_function("urn_sample/10000", |b| {
        let mut rng = seeded(8);
        b.iter(|| urn_sample(black_box(&spec), &mut rng).unwrap());
    });
}

criterion_group!(benches, generation, push_pull, expansion, barriers, urns);
criterion_main!(benches);
