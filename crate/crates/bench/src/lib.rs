//! Fixed inputs shared by the criterion benchmarks, so both bench targets
//! measure the same instances.

use pclab::{ColInstance, Field, Graph, Polynomial};

/// Seed used by every randomized fixture.
pub const SEED: u64 = 20_240_601;

/// The sampler-sparsity regime: `G(1000, 6/1000)`.
pub fn sparse_random_graph() -> Graph {
    pclab::graph::sample_gnp(1000, 6.0 / 1000.0, SEED).expect("valid probability")
}

/// Non-Boolean axioms of `Col(G, k)`.
pub fn colouring_axioms(g: &Graph, k: usize, field: Field) -> Vec<Polynomial> {
    ColInstance::encode(g, k, field).expect("k ≥ 1").polynomials()
}
