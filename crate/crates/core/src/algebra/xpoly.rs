//! Polynomials in the spatial variable `x` with [`MultiPoly`] coefficients.
//!
//! `x` is structurally separate from the ring variables so that collecting
//! the coefficients of an ODE residual into ideal generators is a total,
//! typed operation. Degree of the zero polynomial is `None` (the "minus
//! infinity" marker).

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::multipoly::MultiPoly;
use super::rational::Rational;
use super::registry::VarRegistry;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly {
    /// Coefficient of `x^k` at index `k`; trailing entry nonzero when present.
    coeffs: Vec<MultiPoly>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: MultiPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k` with coefficient one.
    pub fn x_pow(registry: Arc<VarRegistry>, k: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(registry.clone()); k];
        coeffs.push(MultiPoly::one(registry));
        XPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        let mut p = XPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn registry(&self) -> Option<&Arc<VarRegistry>> {
        self.coeffs.first().map(|c| c.registry())
    }

    /// Coefficient of `x^k`; zero (over the given registry) when absent.
    pub fn coeff(&self, k: usize, registry: &Arc<VarRegistry>) -> MultiPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(registry.clone()))
    }

    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    /// All nonzero coefficients, highest degree first.
    pub fn x_coefficients(&self) -> Vec<(usize, &MultiPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in other.coeffs.iter().enumerate() {
            if k < coeffs.len() {
                coeffs[k] = coeffs[k].checked_add(c)?;
            } else {
                coeffs.push(c.clone());
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let reg = self.registry().unwrap().clone();
        let deg = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![MultiPoly::zero(reg); deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn neg(&self) -> Self {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|k| k.scale(c)).collect())
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for k in &self.coeffs {
            coeffs.push(k.checked_mul(c)?);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// d/dx.
    pub fn derivative_x(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from(BigInt::from(k))))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Formal partial derivative in a registered ring variable.
    pub fn derivative_var(&self, var: usize) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.derivative(var)?);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Antiderivative in `x` with zero constant term.
    pub fn antiderivative_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let reg = self.registry().unwrap().clone();
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(MultiPoly::zero(reg));
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(BigInt::from(1), BigInt::from(k + 1))));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| c.substitute(var, value))
                .collect(),
        )
    }

    pub fn remap(&self, target: &Arc<VarRegistry>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.remap(target)?);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.x_coefficients().into_iter().enumerate() {
            // a trailing multi-term constant can be spliced in without parens
            if k == 0 && c.n_terms() > 1 && i > 0 {
                let body = c.render();
                match body.strip_prefix('-') {
                    Some(rest) => {
                        out.push_str(" - ");
                        out.push_str(rest);
                    }
                    None => {
                        out.push_str(" + ");
                        out.push_str(&body);
                    }
                }
                continue;
            }
            let (body, neg) = render_coeff_term(c, k);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

/// Render `c * x^k`, factoring out a leading minus when the coefficient is a
/// single negative term. Multi-term coefficients are parenthesized.
fn render_coeff_term(c: &MultiPoly, k: usize) -> (String, bool) {
    let xpart = match k {
        0 => String::new(),
        1 => "x".to_string(),
        _ => alloc::format!("x^{k}"),
    };
    if c.n_terms() > 1 {
        let body = alloc::format!("({})", c.render());
        return if xpart.is_empty() {
            (body, false)
        } else {
            (alloc::format!("{body}*{xpart}"), false)
        };
    }
    let text = c.render();
    let (neg, text) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    if xpart.is_empty() {
        (text, neg)
    } else if text == "1" {
        (xpart, neg)
    } else {
        (alloc::format!("{text}*{xpart}"), neg)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl core::ops::Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        self.checked_add(rhs).expect("registry mismatch")
    }
}

impl core::ops::Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self.checked_sub(rhs).expect("registry mismatch")
    }
}

impl core::ops::Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        self.checked_mul(rhs).expect("registry mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};

    fn reg(names: &[&str]) -> Arc<VarRegistry> {
        VarRegistry::base(names).unwrap()
    }

    fn c(reg: &Arc<VarRegistry>, v: i64) -> MultiPoly {
        MultiPoly::constant(reg.clone(), rat_int(v))
    }

    #[test]
    fn quartic_square_expansion() {
        // (x^2 + 2x - 1)^2 = x^4 + 4x^3 + 2x^2 - 4x + 1
        let r = reg(&[]);
        let w = XPoly::from_coeffs(vec![c(&r, -1), c(&r, 2), c(&r, 1)]);
        let sq = &w * &w;
        let expect = XPoly::from_coeffs(vec![c(&r, 1), c(&r, -4), c(&r, 2), c(&r, 4), c(&r, 1)]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn derivative_and_antiderivative() {
        // d/dx (x^3/3 + x^2 - x) = x^2 + 2x - 1
        let r = reg(&[]);
        let f = XPoly::from_coeffs(vec![
            MultiPoly::zero(r.clone()),
            c(&r, -1),
            c(&r, 1),
            MultiPoly::constant(r.clone(), rat(1, 3)),
        ]);
        let df = f.derivative_x();
        assert_eq!(df.render(), "x^2 + 2*x - 1");
        // antiderivative round-trips with zero constant term
        assert_eq!(df.antiderivative_x(), f);
    }

    #[test]
    fn x_coefficients_read_off() {
        let r = reg(&["mu"]);
        let mu = MultiPoly::var_named(&r, "mu").unwrap();
        let lam = MultiPoly::var_named(&r, "lambda").unwrap();
        // (mu - 2) x + 3 + lambda
        let f = XPoly::from_coeffs(vec![&lam + &c(&r, 3), &mu - &c(&r, 2)]);
        let coeffs = f.x_coefficients();
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[0].0, 1);
        assert_eq!(coeffs[0].1.render(), "mu - 2");
        assert_eq!(coeffs[1].0, 0);
        assert_eq!(coeffs[1].1.render(), "lambda + 3");
        assert!(XPoly::zero().x_coefficients().is_empty());
        assert_eq!(XPoly::zero().degree(), None);
    }

    #[test]
    fn reassembly_reproduces_input() {
        let r = reg(&["mu"]);
        let mu = MultiPoly::var_named(&r, "mu").unwrap();
        let f = XPoly::from_coeffs(vec![c(&r, 7), MultiPoly::zero(r.clone()), mu]);
        let mut rebuilt = XPoly::zero();
        for (k, coeff) in f.x_coefficients() {
            let term = XPoly::x_pow(r.clone(), k).scale_poly(coeff).unwrap();
            rebuilt = rebuilt.checked_add(&term).unwrap();
        }
        assert_eq!(rebuilt, f);
    }
}
