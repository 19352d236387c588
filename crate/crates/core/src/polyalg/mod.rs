//! Polynomial arithmetic: dense univariate and sparse multivariate
//! polynomials, resultants, symmetric rewriting, root finding and the
//! summation polynomials built from them.

mod multipoly;
mod resultant;
mod roots;
pub mod summation;
mod symmetric;
mod unipoly;

pub use multipoly::{Monomial, MultiPoly, MAX_EXP, MAX_VARS};
pub use resultant::resultant;
pub use roots::{roots_in_field, roots_in_fq, roots_in_fqn};
pub use summation::SummationPolys;
pub use symmetric::{check_symmetric, elementary, elementary_values, symmetrize};
pub use unipoly::UniPoly;
