//! Laboratory for polynomial calculus degree lower bounds on graph colouring
//! formulas.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: multilinear polynomials over prime fields and the rationals,
//!   variables `x_{v,i}` and the degree-then-lex monomial order induced by a
//!   vertex order.
//! * [`ideal`]: Gröbner bases in the Boolean quotient, the reduction operator,
//!   ideal membership, common-root enumeration and the degree-bounded
//!   refutation decision procedure.
//! * [`encoding`]: the colouring polynomial system, the CNF formula, DIMACS
//!   output and the clause-to-polynomial translation.
//! * [`graph`]: graphs, random models, sparsity checks, exact colouring,
//!   descendants, hops and lassos, closures, contraction and `T_Δ`.
//! * [`framework`]: support map, pseudo-reduction operator, condition
//!   verifiers, star colourings and the substitution used by the reducibility
//!   argument.
//! * [`resgame`]: the prover–adversary width game.
//! * [`harness`]: reproducible experiment drivers used by the `pclab` CLI.

pub mod algebra;
pub mod encoding;
pub mod error;
pub mod framework;
pub mod graph;
pub mod harness;
pub mod ideal;
pub mod resgame;
pub mod rng;

pub use algebra::{Field, Monomial, MonomialOrder, Polynomial, Scalar, Variable};
pub use encoding::{Axiom, AxiomKind, CnfFormula, ColInstance};
pub use error::{Error, Result};
pub use framework::{FrameworkContext, FrameworkReport};
pub use graph::{Graph, VertexOrder};
pub use ideal::{GroebnerBasis, PcDegreeResult};
