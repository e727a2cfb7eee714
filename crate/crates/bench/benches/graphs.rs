use std::collections::BTreeSet;

use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::Rational64;
use pclab::framework::{verify, FrameworkContext};
use pclab::graph::{self, VertexOrder};
use pclab::Field;
use pclab_bench::{sparse_random_graph, SEED};

fn samplers(c: &mut Criterion) {
    c.bench_function("sample_gnp_1000_6_over_n", |b| {
        b.iter(|| graph::sample_gnp(1000, 6.0 / 1000.0, SEED).expect("valid probability"))
    });
    c.bench_function("sample_regular_1000_3", |b| {
        b.iter(|| graph::sample_regular(1000, 3, SEED).expect("simple pairing found"))
    });
}

fn sparsity(c: &mut Criterion) {
    let g = sparse_random_graph();
    c.bench_function("sparsity_gnp1000_ell12_eps3", |b| {
        b.iter(|| graph::check_sparsity(&g, 12, Rational64::from_integer(3)).expect("within budget"))
    });
}

fn closures(c: &mut Criterion) {
    let g = sparse_random_graph();
    let order = VertexOrder::identity(g.n());
    let sets: Vec<BTreeSet<usize>> = (0..20).map(|i| [i * 37 % g.n(), i * 101 % g.n()].into()).collect();
    c.bench_function("closure_pairs_gnp1000", |b| {
        b.iter(|| sets.iter().map(|u| graph::closure(&g, &order, u).len()).sum::<usize>())
    });
    c.bench_function("resolution_closure_pairs_gnp1000", |b| {
        b.iter(|| sets.iter().map(|u| graph::resolution_closure(&g, u).len()).sum::<usize>())
    });
}

fn framework(c: &mut Criterion) {
    let g = graph::sample_gnp(14, 2.0 / 14.0, SEED).expect("valid probability");
    let mut group = c.benchmark_group("framework");
    group.sample_size(10);
    group.bench_function("verify_gnp14_k3_D2", |b| {
        b.iter(|| {
            let ctx = FrameworkContext::build(&g, 3, Field::Prime(2), 3).expect("context");
            verify(&ctx, 2, 200, SEED).expect("report")
        })
    });
    group.finish();
}

criterion_group!(benches, samplers, sparsity, closures, framework);
criterion_main!(benches);
