//! The lower-bound construction as checkable objects.
//!
//! A [`FrameworkContext`] fixes `T_Δ`, a colouring of the remaining graph
//! and the resulting vertex and monomial orders. On top of it sit the
//! support map `m ↦ S(m)` (the axioms of the subgraph induced by the
//! closure of `V(m) ∪ T_Δ`), the operator reducing each monomial modulo
//! its own support, verifiers for the conditions that make that operator
//! a degree-`D` pseudo-reduction, the star colouring and substitution used
//! for the reducibility argument, and the closed-form degree predictions.
//!
//! Universally quantified conditions are checked on every monomial when
//! there are few enough and on seeded samples otherwise; passing results
//! mean no counterexample was found.

mod context;
mod predict;
mod substitution;
mod verify;

pub use context::{ContextSummary, FrameworkContext, MAX_ALGEBRA_VERTICES, RESIDUAL_COLOURING_NODES};
pub use predict::{admits_degree, corollary_degree_form, implied_size_exponent, predict_degree};
pub use substitution::{star_colouring, substitution, StarColouring, Substitution};
pub use verify::{
    recheck, verify, CheckResult, Counterexample, FrameworkReport, MonomialSample, PseudoReductionSection,
    SampleInfo, SampleMode, Status, SupportSection, Verifier, DEFAULT_SAMPLES, EXHAUSTIVE_MONOMIALS,
};
