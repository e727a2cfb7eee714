use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pclab::ideal::{min_refutation_degree, GroebnerBasis, PcConfig};
use pclab::{Field, Graph, MonomialOrder};
use pclab_bench::colouring_axioms;

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner_basis");
    for (name, g, k) in [("C7_k3", Graph::cycle(7), 3), ("K4_k3", Graph::complete(4), 3), ("petersen_k3", Graph::petersen(), 3)] {
        for field in [Field::Prime(2), Field::Rational] {
            let axioms = colouring_axioms(&g, k, field);
            let order = MonomialOrder::identity(g.n(), k);
            group.bench_with_input(BenchmarkId::new(name, field), &axioms, |b, axioms| {
                b.iter(|| GroebnerBasis::new(field, axioms, &order).expect("basis"))
            });
        }
    }
    group.finish();
}

fn refutation_degree(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_refutation_degree");
    group.sample_size(10);
    for (name, g, k) in [("C9_k2", Graph::cycle(9), 2), ("K4_k3", Graph::complete(4), 3), ("W5_k3", Graph::wheel(5), 3)] {
        for field in [Field::Prime(2), Field::Prime(5)] {
            let axioms = colouring_axioms(&g, k, field);
            group.bench_with_input(BenchmarkId::new(name, field), &axioms, |b, axioms| {
                b.iter(|| min_refutation_degree(axioms, field, 6, &PcConfig::default()).expect("within cap"))
            });
        }
    }
    group.finish();
}

fn multiplication(c: &mut Criterion) {
    let axioms = colouring_axioms(&Graph::complete(5), 4, Field::Rational);
    let (p, q) = (&axioms[0], &axioms[1]);
    let sum = p.add(q).expect("same field");
    c.bench_function("multiply_vertex_axioms_K5_k4", |b| b.iter(|| sum.multiply(&sum).expect("same field")));
}

criterion_group!(benches, groebner, refutation_degree, multiplication);
criterion_main!(benches);
