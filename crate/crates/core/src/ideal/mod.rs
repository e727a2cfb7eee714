//! Ideal computations in the Boolean quotient: Gröbner bases and the
//! reduction operator, ideal membership, common roots, and the
//! degree-bounded polynomial calculus decision procedure.

mod bits;
mod engine;
mod groebner;
mod pc;
mod roots;

pub use groebner::{GbCache, GroebnerBasis};
pub use pc::{
    check_certificate, min_refutation_degree, pc_degree_refutable, CertStep, Certificate, PcConfig,
    PcDegreeResult,
};
pub use roots::{common_roots, MAX_ROOT_VARIABLES};
