//! Graphs and vertex orders, random models, sparsity, exact colouring, and
//! the closure machinery: descendants, hops and lassos, closures,
//! resolution closures, contraction and the high-degree cover.

mod closure;
mod colouring;
mod ops;
mod random;
mod sparsity;
mod types;

pub use closure::{
    closure, closure_with_witness, descendants, find_hop_or_lasso, is_closed, resolution_closure, ClosureTrace,
    HopKind, HopOrLasso,
};
pub use colouring::{
    chromatic_colouring, chromatic_colouring_with_budget, chromatic_number, greedy_colouring, is_k_colourable,
    is_proper, is_proper_partial, k_colouring_with_budget, subgraph_colourable, ColourSearch, COLOURING_NODES,
};
pub use ops::{contract, high_degree_cover};
pub use random::{sample_gnp, sample_regular, sample_regular_with_budget, REGULAR_ATTEMPTS};
pub use sparsity::{
    check_sparsity, check_sparsity_with_budget, parse_ratio, violates, SparsityMode, SparsityReport, SPARSITY_BUDGET,
};
pub use types::{Graph, VertexOrder};
