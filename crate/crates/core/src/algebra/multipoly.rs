//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose intrinsic `Ord`
//! is the registry lex order, so the map is always sorted by the active
//! monomial order and the canonical text rendering falls out of reverse
//! iteration. No zero coefficient is ever stored.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::rational::Rational;
use super::registry::VarRegistry;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct MultiPoly {
    registry: Arc<VarRegistry>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        VarRegistry::same(&self.registry, &other.registry) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(registry: Arc<VarRegistry>) -> Self {
        MultiPoly {
            registry,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(registry: Arc<VarRegistry>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(registry.len()), c);
        }
        MultiPoly { registry, terms }
    }

    pub fn one(registry: Arc<VarRegistry>) -> Self {
        Self::constant(registry, Rational::one())
    }

    pub fn var(registry: Arc<VarRegistry>, i: usize) -> Result<Self> {
        if i >= registry.len() {
            return Err(Error::Usage(format!("variable index {i} out of range")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(registry.len(), i), Rational::one());
        Ok(MultiPoly { registry, terms })
    }

    pub fn var_named(registry: &Arc<VarRegistry>, name: &str) -> Result<Self> {
        let i = registry
            .index_of(name)
            .ok_or_else(|| Error::Usage(format!("unknown variable `{name}`")))?;
        Self::var(registry.clone(), i)
    }

    pub fn from_terms(
        registry: Arc<VarRegistry>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(registry);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        debug_assert_eq!(mono.len(), self.registry.len());
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// `Some(c)` iff the polynomial is the constant `c` (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Leading term under `order`; fast path for the identity order.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        if order.is_identity() {
            return self.terms.iter().next_back();
        }
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn used_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.support());
        }
        out
    }

    fn check_same_registry(&self, other: &Self) -> Result<()> {
        if VarRegistry::same(&self.registry, &other.registry) {
            Ok(())
        } else {
            Err(Error::Usage(
                "operands use different registries".to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_registry(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_registry(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_registry(other)?;
        let mut out = Self::zero(self.registry.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        MultiPoly {
            registry: self.registry.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.registry.clone());
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        MultiPoly {
            registry: self.registry.clone(),
            terms,
        }
    }

    /// In-place `self -= c * mono * g`; the workhorse of division, where
    /// cloning the dividend every step would be quadratic.
    pub(crate) fn sub_mul_term_assign(&mut self, g: &MultiPoly, mono: &Monomial, c: &Rational) {
        for (m, k) in &g.terms {
            self.add_term(m.mul(mono), -(k * c));
        }
    }

    /// In-place removal of one monomial's term, returning its coefficient.
    pub(crate) fn take_term(&mut self, mono: &Monomial) -> Option<Rational> {
        self.terms.remove(mono)
    }

    /// In-place `self += c * mono`.
    pub(crate) fn add_term_assign(&mut self, mono: Monomial, c: Rational) {
        self.add_term(mono, c);
    }

    /// Multiply by a single term `c * mono`.
    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.registry.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.mul(mono), k * c))
            .collect();
        MultiPoly {
            registry: self.registry.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.registry.clone());
        for _ in 0..e {
            out = out.checked_mul(self).expect("same registry");
        }
        out
    }

    /// Formal partial derivative with respect to a registered variable.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.registry.len() {
            return Err(Error::Usage(format!("variable index {var} out of range")));
        }
        let mut out = Self::zero(self.registry.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps: Vec<u32> = (0..m.len()).map(|i| m.exponent(i)).collect();
            exps[var] = e - 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    /// Substitute a rational value for one variable.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.registry.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut exps: Vec<u32> = (0..m.len()).map(|i| m.exponent(i)).collect();
            exps[var] = 0;
            let mut coef = c.clone();
            for _ in 0..e {
                coef *= value;
            }
            out.add_term(Monomial::from_exponents(exps), coef);
        }
        out
    }

    /// Re-express over another registry, matching variables by name. Fails
    /// if a used variable is missing from the target registry.
    pub fn remap(&self, target: &Arc<VarRegistry>) -> Result<Self> {
        if VarRegistry::same(&self.registry, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.registry.len());
        for i in 0..self.registry.len() {
            map.push(target.index_of(self.registry.name(i)));
        }
        let mut out = Self::zero(target.clone());
        for (m, c) in &self.terms {
            let mut exps = alloc::vec![0u32; target.len()];
            for i in m.support() {
                match map[i] {
                    Some(j) => exps[j] += m.exponent(i),
                    None => {
                        return Err(Error::Usage(format!(
                            "variable `{}` missing from target registry",
                            self.registry.name(i)
                        )))
                    }
                }
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Scale to integer-primitive coefficients with positive leading
    /// coefficient in the given order. Errors on the zero polynomial.
    pub fn content_normalize(&self, order: &MonomialOrder) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Usage(
                "content normalization of the zero polynomial".to_string(),
            ));
        }
        // lcm of denominators, then gcd of the resulting integer numerators
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * Rational::from(den_lcm.clone());
            debug_assert!(scaled.denom().is_one());
            num_gcd = num_gcd.gcd(scaled.numer());
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        let (lead_m, _) = self.leading(order).unwrap();
        if (self.coefficient(lead_m) * &factor).is_negative() {
            factor = -factor;
        }
        Ok(self.scale(&factor))
    }

    /// Canonical text: terms in decreasing active order, explicit signs,
    /// `*` for products and `^` for exponents.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = self.render_monomial(m);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..m.len() {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(self.registry.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", self.registry.name(i), e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl core::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("registry mismatch")
    }
}

impl core::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("registry mismatch")
    }
}

impl core::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("registry mismatch")
    }
}

impl core::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Deterministic total order used to sort basis elements for canonical
/// output: leading monomial first (reduced bases have distinct leading
/// monomials), rendered text as tie-break.
pub(crate) fn canonical_cmp(a: &MultiPoly, b: &MultiPoly, order: &MonomialOrder) -> Ordering {
    match (a.leading(order), b.leading(order)) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some((ma, _)), Some((mb, _))) => match order.compare(ma, mb) {
            Ordering::Equal => a.render().cmp(&b.render()),
            o => o,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};

    fn reg(names: &[&str]) -> Arc<VarRegistry> {
        VarRegistry::base(names).unwrap()
    }

    fn var(r: &Arc<VarRegistry>, name: &str) -> MultiPoly {
        MultiPoly::var_named(r, name).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        // (t+1)*(t-1) = t^2 - 1 over a one-parameter registry
        let r = reg(&["t"]);
        let t = var(&r, "t");
        let one = MultiPoly::one(r.clone());
        let lhs = &(&t + &one) * &(&t - &one);
        let rhs = &t.pow(2) - &one;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = reg(&["t"]);
        let t = var(&r, "t");
        let f = &t.pow(3) + &MultiPoly::constant(r.clone(), rat(5, 3));
        assert!((&f + &f.neg()).is_zero());
    }

    #[test]
    fn registry_mismatch_is_usage_error() {
        let a = MultiPoly::one(reg(&["a"]));
        let b = MultiPoly::one(reg(&["b"]));
        assert!(matches!(a.checked_add(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn derivative_power_rule() {
        let r = reg(&["t"]);
        let t = var(&r, "t");
        // d/dt (t^4 + 4 t^3) = 4 t^3 + 12 t^2
        let f = &t.pow(4) + &t.pow(3).scale(&rat_int(4));
        let ti = r.index_of("t").unwrap();
        let df = f.derivative(ti).unwrap();
        let expect = &t.pow(3).scale(&rat_int(4)) + &t.pow(2).scale(&rat_int(12));
        assert_eq!(df, expect);
        // constant in an absent direction
        let li = r.lambda_index().unwrap();
        assert!(f.derivative(li).unwrap().is_zero());
    }

    #[test]
    fn content_normalize_examples() {
        let r = reg(&[]);
        let order = MonomialOrder::lex_identity(r.len());
        let l = MultiPoly::var_named(&r, "lambda").unwrap();
        // (1/2) l^2 + 5 l + 17/2  ->  l^2 + 10 l + 17
        let f = &(&l.pow(2).scale(&rat(1, 2)) + &l.scale(&rat_int(5)))
            + &MultiPoly::constant(r.clone(), rat(17, 2));
        let g = f.content_normalize(&order).unwrap();
        let expect = &(&l.pow(2) + &l.scale(&rat_int(10))) + &MultiPoly::constant(r, rat_int(17));
        assert_eq!(g, expect);
        assert_eq!(g.render(), "lambda^2 + 10*lambda + 17");
        // idempotent
        assert_eq!(g.content_normalize(&order).unwrap(), g);
    }

    #[test]
    fn content_normalize_sign_and_zero() {
        let r = reg(&["t"]);
        let order = MonomialOrder::lex_identity(r.len());
        let t = var(&r, "t");
        assert_eq!(t.scale(&rat_int(-3)).content_normalize(&order).unwrap(), t);
        assert!(MultiPoly::zero(r).content_normalize(&order).is_err());
    }

    #[test]
    fn render_orders_by_active_priority() {
        // registry [lambda, g]: 384 g - 216 lambda + lambda^3 renders with
        // the lambda^3 term first because lambda has higher priority.
        let r = reg(&["g"]);
        let l = var(&r, "lambda");
        let g = var(&r, "g");
        let f = &(&g.scale(&rat_int(384)) - &l.scale(&rat_int(216))) + &l.pow(3);
        assert_eq!(f.render(), "lambda^3 - 216*lambda + 384*g");
    }

    #[test]
    fn remap_moves_terms_by_name() {
        let base = reg(&["mu"]);
        let ext = base.with_ansatz(2).unwrap();
        let f = &var(&base, "mu").pow(2) - &var(&base, "lambda");
        let g = f.remap(&ext).unwrap();
        assert_eq!(g.render(), "-lambda + mu^2");
        assert_eq!(g.registry().len(), 4);
    }
}
