//! Exact arithmetic foundation: arbitrary-precision rationals, sparse
//! multivariate polynomials over them, and univariate-in-`x` polynomials
//! whose coefficients are multivariate polynomials.

mod monomial;
mod multipoly;
mod parse;
mod rational;
mod registry;
mod xpoly;

pub use monomial::{monomial_compare, Monomial, MonomialOrder};
pub(crate) use multipoly::canonical_cmp as multipoly_canonical_cmp;
pub use multipoly::MultiPoly;
pub use parse::parse_potential;
pub use rational::{rat, rat_int, Rational};
pub use registry::{Block, VarRegistry, LAMBDA_NAME, SPATIAL_NAME};
pub use xpoly::XPoly;
