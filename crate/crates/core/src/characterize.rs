//! Branch characterization: input guards, the quantization condition
//! `±c_{n-1} - n = 2s`, the two auxiliary ODEs satisfied by the polynomial
//! factor, and the eigenfunction exponent.
//!
//! Branch pairing is fixed throughout the engine: the plus branch carries
//! the ODE `P'' + 2W P' + (W' - C_λ) P = 0` and the eigenfunction
//! `P e^{+f}`; the minus branch carries `P'' - 2W P' - (W' + C_λ) P = 0`
//! and `P e^{-f}`, where `W = x^n + B` and `f' = W`. This is forced by
//! substituting `ψ = P e^{±f}` into `ψ'' = (V - λ) ψ`.

use alloc::string::ToString;

use num_bigint::BigInt;

use crate::algebra::{MultiPoly, Rational, XPoly};
use crate::error::{Error, Result};
use crate::square::SquareForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchSign {
    Plus,
    Minus,
}

impl BranchSign {
    pub fn label(&self) -> &'static str {
        match self {
            BranchSign::Plus => "plus",
            BranchSign::Minus => "minus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plus" | "+" => Some(BranchSign::Plus),
            "minus" | "-" => Some(BranchSign::Minus),
            _ => None,
        }
    }
}

impl core::fmt::Display for BranchSign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of the degree guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    /// Even degree `2n`. `solvable_advisory` marks degree 0 or 2 potentials,
    /// whose algebraic spectrum is infinite.
    Even { n: usize, solvable_advisory: bool },
    /// Odd degree: not integrable for any eigenvalue (Galois group
    /// `SL(2, C)` throughout).
    OddDegree,
}

/// Classify the potential degree. The zero polynomial counts as degree 0
/// (every eigenvalue works; the quantization machinery needs `deg > 0`).
pub fn parity_guard(v: &XPoly) -> Guard {
    match v.degree() {
        None | Some(0) => Guard::Even {
            n: 0,
            solvable_advisory: true,
        },
        Some(d) if d % 2 == 1 => Guard::OddDegree,
        Some(d) => Guard::Even {
            n: d / 2,
            solvable_advisory: d == 2,
        },
    }
}

/// The quantization constraint `±c_{n-1} - n - 2s` for one `(sign, s)` case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantization {
    pub sign: BranchSign,
    pub s: usize,
    /// Polynomial over `{lambda} ∪ parameters` that must vanish.
    pub constraint: MultiPoly,
}

/// How a quantization constraint participates in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantDisposition {
    /// Identically zero: the case is admissible with no extra generator.
    Satisfied,
    /// A nonzero rational: the case is excluded outright.
    Unsatisfiable,
    /// Carries variables: adjoined to the ideal as a generator.
    Constraint,
}

impl Quantization {
    pub fn disposition(&self) -> QuantDisposition {
        match self.constraint.constant_value() {
            Some(c) if num_traits::Zero::is_zero(&c) => QuantDisposition::Satisfied,
            Some(_) => QuantDisposition::Unsatisfiable,
            None => QuantDisposition::Constraint,
        }
    }
}

/// Build the quantization constraint from the λ-shifted square form.
pub fn quantization(sf_lambda: &SquareForm, s: usize, sign: BranchSign) -> Result<Quantization> {
    let n = sf_lambda.n();
    if n == 0 {
        return Err(Error::Usage(
            "quantization requires a potential of positive degree".to_string(),
        ));
    }
    let c_top = sf_lambda.c_coeff(n - 1);
    let shift = MultiPoly::constant(
        sf_lambda.registry().clone(),
        Rational::from(BigInt::from(n as i64 + 2 * s as i64)),
    );
    let constraint = match sign {
        BranchSign::Plus => c_top.checked_sub(&shift)?,
        BranchSign::Minus => c_top.neg().checked_sub(&shift)?,
    };
    Ok(Quantization {
        sign,
        s,
        constraint,
    })
}

/// One of the two auxiliary ODEs `P'' + A1 P' + A0 P = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryOde {
    pub sign: BranchSign,
    pub a1: XPoly,
    pub a0: XPoly,
}

/// Assemble the auxiliary ODE for a branch from the λ-shifted square form.
pub fn auxiliary_ode(sf_lambda: &SquareForm, sign: BranchSign) -> Result<AuxiliaryOde> {
    let w = sf_lambda.w();
    let dw = w.derivative_x();
    let (a1, a0) = match sign {
        BranchSign::Plus => (
            w.scale(&crate::algebra::rat_int(2)),
            dw.checked_sub(sf_lambda.c())?,
        ),
        BranchSign::Minus => (
            w.scale(&crate::algebra::rat_int(-2)),
            dw.checked_add(sf_lambda.c())?.neg(),
        ),
    };
    Ok(AuxiliaryOde { sign, a1, a0 })
}

/// The eigenfunction exponent `f` with `f' = x^n + B` and `f(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentData {
    pub f: XPoly,
}

pub fn exponent(sf: &SquareForm) -> ExponentData {
    ExponentData {
        f: sf.w().antiderivative_x(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_potential;
    use crate::square::{complete_square, shift_by_lambda};

    fn shifted(src: &str, n: usize) -> SquareForm {
        let (v, _) = parse_potential(src).unwrap();
        shift_by_lambda(&complete_square(&v, n).unwrap()).unwrap()
    }

    #[test]
    fn parity_guard_cases() {
        let (v, _) = parse_potential("x").unwrap();
        assert_eq!(parity_guard(&v), Guard::OddDegree);
        let (v, _) = parse_potential("0").unwrap();
        assert_eq!(
            parity_guard(&v),
            Guard::Even {
                n: 0,
                solvable_advisory: true
            }
        );
        let (v, _) = parse_potential("x^4+4*x^3+2*x^2-mu*x").unwrap();
        assert_eq!(
            parity_guard(&v),
            Guard::Even {
                n: 2,
                solvable_advisory: false
            }
        );
    }

    #[test]
    fn quartic_quantization() {
        let sf = shifted("x^4+4*x^3+2*x^2-mu*x", 2);
        // plus: (4 - mu) - 2 - 2s, i.e. mu = 2 - 2s
        let q = quantization(&sf, 1, BranchSign::Plus).unwrap();
        assert_eq!(q.constraint.render(), "-mu");
        assert_eq!(q.disposition(), QuantDisposition::Constraint);
        let q = quantization(&sf, 0, BranchSign::Plus).unwrap();
        assert_eq!(q.constraint.render(), "-mu + 2");
    }

    #[test]
    fn decatic_quantization() {
        let sf = shifted("x^10-x^8+x^6+delta*x^4+epsilon*x^2", 5);
        // plus: (delta + 3/8) - 5 - 2s, i.e. delta = 2s + 37/8
        let q = quantization(&sf, 1, BranchSign::Plus).unwrap();
        assert_eq!(q.constraint.render(), "delta - 53/8");
        // minus: delta = -2s - 43/8
        let q = quantization(&sf, 1, BranchSign::Minus).unwrap();
        assert_eq!(q.constraint.render(), "-delta - 59/8");
    }

    #[test]
    fn harmonic_quantization_contains_lambda() {
        let sf = shifted("x^2", 1);
        let q = quantization(&sf, 3, BranchSign::Plus).unwrap();
        // -lambda - 1 - 2s
        assert_eq!(q.constraint.render(), "-lambda - 7");
        let q = quantization(&sf, 3, BranchSign::Minus).unwrap();
        assert_eq!(q.constraint.render(), "lambda - 7");
    }

    #[test]
    fn sextic_unsatisfiable_branch() {
        // V = x^6 - 7x^2 (J = 2): minus branch needs s = 2 exactly
        let sf = shifted("x^6-7*x^2", 3);
        let q = quantization(&sf, 1, BranchSign::Minus).unwrap();
        assert_eq!(q.disposition(), QuantDisposition::Unsatisfiable);
        let q = quantization(&sf, 2, BranchSign::Minus).unwrap();
        assert_eq!(q.disposition(), QuantDisposition::Satisfied);
    }

    #[test]
    fn quartic_odes_match_both_branches() {
        let sf = shifted("x^4+4*x^3+2*x^2-mu*x", 2);
        let plus = auxiliary_ode(&sf, BranchSign::Plus).unwrap();
        assert_eq!(plus.a1.render(), "2*x^2 + 4*x - 2");
        assert_eq!(plus.a0.render(), "(mu - 2)*x + lambda + 3");
        let minus = auxiliary_ode(&sf, BranchSign::Minus).unwrap();
        assert_eq!(minus.a1.render(), "-2*x^2 - 4*x + 2");
        assert_eq!(minus.a0.render(), "(mu - 6)*x + lambda - 1");
    }

    #[test]
    fn sextic_minus_ode() {
        // V = x^6 - (4J-1) x^2 with J symbolic via c2 = -(4J-1):
        // use J = 2 bound: A0 = lambda + 4 x^2
        let sf = shifted("x^6-7*x^2", 3);
        let minus = auxiliary_ode(&sf, BranchSign::Minus).unwrap();
        assert_eq!(minus.a1.render(), "-2*x^3");
        assert_eq!(minus.a0.render(), "4*x^2 + lambda");
    }

    #[test]
    fn exponents() {
        let (v, _) = parse_potential("x^4+4*x^3+2*x^2-mu*x").unwrap();
        let sf = complete_square(&v, 2).unwrap();
        assert_eq!(exponent(&sf).f.render(), "1/3*x^3 + x^2 - x");

        let (v, _) = parse_potential("x^6-7*x^2").unwrap();
        let sf = complete_square(&v, 3).unwrap();
        assert_eq!(exponent(&sf).f.render(), "1/4*x^4");

        let (v, _) = parse_potential("x^10-x^8+x^6+delta*x^4+epsilon*x^2").unwrap();
        let sf = complete_square(&v, 5).unwrap();
        assert_eq!(exponent(&sf).f.render(), "1/6*x^6 - 1/8*x^4 + 3/16*x^2");
    }

    #[test]
    fn exponent_derivative_recovers_w() {
        for (src, n) in [
            ("x^4+4*x^3+2*x^2-mu*x", 2usize),
            ("x^10-x^8+x^6+delta*x^4+epsilon*x^2", 5),
            ("x^12+kappa*x^6+mu*x^5", 6),
        ] {
            let (v, _) = parse_potential(src).unwrap();
            let sf = complete_square(&v, n).unwrap();
            assert_eq!(exponent(&sf).f.derivative_x(), sf.w());
        }
    }

    /// The load-bearing identity behind the whole pipeline: substituting
    /// `ψ = P e^{±f}` into `ψ'' = (V - λ)ψ` yields `P'' + A1 P' + A0 P = 0`
    /// with `A1 = ±2W` and `A0 = ±W' + W^2 - (V - λ)`.
    #[test]
    fn ode_exponent_consistency() {
        for (src, n) in [
            ("x^4+4*x^3+2*x^2-mu*x", 2usize),
            ("x^6-7*x^2", 3),
            ("x^8+(2*delta+4)*x^4+mu*x^3+delta^2+4*delta+4", 4),
            ("x^10-x^8+x^6+delta*x^4+epsilon*x^2", 5),
            ("x^12+kappa*x^6+mu*x^5", 6),
        ] {
            let (v, reg) = parse_potential(src).unwrap();
            let sf = shift_by_lambda(&complete_square(&v, n).unwrap()).unwrap();
            let w = sf.w();
            let w2 = w.checked_mul(&w).unwrap();
            let lam =
                XPoly::constant(MultiPoly::var(reg.clone(), reg.lambda_index().unwrap()).unwrap());
            let v_minus_lambda = v.checked_sub(&lam).unwrap();
            for sign in [BranchSign::Plus, BranchSign::Minus] {
                let ode = auxiliary_ode(&sf, sign).unwrap();
                let dw = w.derivative_x();
                let expect = match sign {
                    BranchSign::Plus => dw
                        .checked_add(&w2)
                        .unwrap()
                        .checked_sub(&v_minus_lambda)
                        .unwrap(),
                    BranchSign::Minus => dw
                        .neg()
                        .checked_add(&w2)
                        .unwrap()
                        .checked_sub(&v_minus_lambda)
                        .unwrap(),
                };
                assert_eq!(
                    ode.a0, expect,
                    "A0 identity failed for {sign} branch of {src}"
                );
            }
        }
    }
}
