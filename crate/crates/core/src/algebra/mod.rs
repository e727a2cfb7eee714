//! Exact multilinear polynomial arithmetic in the Boolean quotient ring.

pub(crate) mod field;
mod json;
mod monomial;
mod order;
mod polynomial;

pub use field::{Field, Scalar};
pub use monomial::{Monomial, Variable};
pub use order::MonomialOrder;
pub use polynomial::{Assignment, Polynomial};
