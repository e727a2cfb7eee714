//! The colouring polynomial system, the CNF colourability formula, DIMACS
//! output, and the standard clause-to-polynomial translation.

mod cnf;
mod col;

pub use cnf::{cnf_to_polynomials, CnfFormula, Literal};
pub use col::{Axiom, AxiomKind, ColInstance};
