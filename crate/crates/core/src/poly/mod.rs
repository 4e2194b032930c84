//! Sparse multivariate polynomials over an exact field.

mod field;
mod monomial;
mod multipoly;

pub use field::Field;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use multipoly::{MultiPoly, VarNames};
