//! Exact decision engine for Liouvillian integrability of the stationary
//! one-dimensional Schrödinger equation with an even-degree monic polynomial
//! potential.
//!
//! The pipeline works entirely in exact rational arithmetic:
//!
//! 1. [`square`] — write `V - λ` as `(x^n + B)^2 + C` with `deg B, deg C < n`.
//! 2. [`characterize`] — branch sign, quantization constraint
//!    `±c_{n-1} - n = 2s`, the two auxiliary ODEs for the polynomial factor,
//!    and the eigenfunction exponent `f` with `f' = x^n + B`.
//! 3. [`ansatz`] — substitute a monic degree-`s` ansatz into the chosen ODE
//!    and collect coefficients in `x` into ideal generators.
//! 4. [`groebner`] — reduced Gröbner basis under block lex
//!    (ansatz ≻ eigenvalue ≻ parameters) and elimination ideals.
//! 5. [`spectral`] — spectral polynomial, exact or certified-numeric
//!    eigenvalues, back-substituted polynomial factors, symbolic residual
//!    verification, and bound-state classification.
//!
//! The crate is `no_std` (plus `alloc`): every value is immutable after
//! construction and every operation is a pure function, so values can be
//! shared and moved across threads freely.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod ansatz;
pub mod characterize;
pub mod error;
pub mod groebner;
pub mod numeric;
pub mod scalar;
pub mod solve;
pub mod spectral;
pub mod square;

pub use algebra::{
    parse_potential, rat, rat_int, Block, Monomial, MonomialOrder, MultiPoly, Rational,
    VarRegistry, XPoly, LAMBDA_NAME, SPATIAL_NAME,
};
pub use ansatz::{ansatz_residual, build_system, AnsatzSystem};
pub use characterize::{
    auxiliary_ode, exponent, parity_guard, quantization, AuxiliaryOde, BranchSign, ExponentData,
    Guard, Quantization,
};
pub use error::{Error, Result};
pub use groebner::{
    buchberger_reduced, eliminate, normal_form, s_polynomial, GroebnerBasis, GroebnerConfig,
};
pub use scalar::Scalar;
pub use solve::{solve_case, CaseOutcome, SolveConfig};
pub use spectral::{
    back_substitute, classify_state, roots, spectral_extract, verify_eigenpair, BoundState,
    Eigenpair, Eigenvalue, LambdaValue, PolyValue, SpectralResult, Verdict,
};
pub use square::{complete_square, shift_by_lambda, SquareForm};
