//! Exact scalars for the spectral stage: rationals extended by one
//! quadratic surd `a + b*sqrt(c)` with a fixed square-free radicand `c`.
//!
//! All arithmetic within one eigenpair happens in a single field `Q(sqrt c)`,
//! which is what makes the identically-zero residual check exact. Negative
//! radicands are allowed (complex quadratic eigenvalues); mixing distinct
//! radicands is a usage error.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    /// `a + b*sqrt(c)` with `b != 0` and `c` square-free, `c != 0, 1`.
    Surd {
        a: Rational,
        b: Rational,
        c: BigInt,
    },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Rat(r)
    }

    pub fn surd(a: Rational, b: Rational, c: BigInt) -> Self {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            Scalar::Surd { a, b, c }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    /// Real iff rational or the radicand is positive.
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Rat(_) => true,
            Scalar::Surd { c, .. } => c.is_positive(),
        }
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Surd { c, .. } => Some(c),
        }
    }

    /// Galois conjugate `a - b*sqrt(c)`.
    pub fn conjugate(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.clone()),
            Scalar::Surd { a, b, c } => Scalar::Surd {
                a: a.clone(),
                b: -b.clone(),
                c: c.clone(),
            },
        }
    }

    fn parts(&self) -> (Rational, Rational, Option<BigInt>) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rational::zero(), None),
            Scalar::Surd { a, b, c } => (a.clone(), b.clone(), Some(c.clone())),
        }
    }

    fn join_radicand(x: Option<BigInt>, y: Option<BigInt>) -> Result<Option<BigInt>> {
        match (x, y) {
            (None, r) | (r, None) => Ok(r),
            (Some(a), Some(b)) if a == b => Ok(Some(a)),
            (Some(a), Some(b)) => Err(Error::Usage(format!(
                "mixed radicands sqrt({a}) and sqrt({b}) in one computation"
            ))),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a1, b1, c1) = self.parts();
        let (a2, b2, c2) = other.parts();
        let c = Self::join_radicand(c1, c2)?;
        Ok(match c {
            None => Scalar::Rat(a1 + a2),
            Some(c) => Scalar::surd(a1 + a2, b1 + b2, c),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Surd { a, b, c } => Scalar::Surd {
                a: -a.clone(),
                b: -b.clone(),
                c: c.clone(),
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a1, b1, c1) = self.parts();
        let (a2, b2, c2) = other.parts();
        let c = Self::join_radicand(c1, c2)?;
        Ok(match c {
            None => Scalar::Rat(a1 * a2),
            Some(c) => {
                let cr = Rational::from(c.clone());
                // (a1 + b1 r)(a2 + b2 r) = a1 a2 + b1 b2 c + (a1 b2 + a2 b1) r
                Scalar::surd(&a1 * &a2 + &b1 * &b2 * cr, &a1 * &b2 + &a2 * &b1, c)
            }
        })
    }

    pub fn mul_rat(&self, r: &Rational) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * r),
            Scalar::Surd { a, b, c } => Scalar::surd(a * r, b * r, c.clone()),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        match other {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    return Err(Error::Usage("division by zero".to_string()));
                }
                Ok(self.mul_rat(&(Rational::one() / r)))
            }
            Scalar::Surd { a, b, c } => {
                // 1/(a + b r) = (a - b r)/(a^2 - b^2 c)
                let norm = a * a - b * b * Rational::from(c.clone());
                if norm.is_zero() {
                    return Err(Error::Usage(
                        "division by zero (degenerate surd)".to_string(),
                    ));
                }
                let inv = other.conjugate().mul_rat(&(Rational::one() / norm));
                self.mul(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(r) => r.to_string(),
            Scalar::Surd { a, b, c } => {
                let root = format!("sqrt({c})");
                let bpart = if b.is_one() {
                    root
                } else if (-b).is_one() {
                    format!("-{root}")
                } else {
                    format!("{b}*{root}")
                };
                if a.is_zero() {
                    bpart
                } else if let Some(rest) = bpart.strip_prefix('-') {
                    format!("{a} - {rest}")
                } else {
                    format!("{a} + {bpart}")
                }
            }
        }
    }
}

impl core::fmt::Display for Scalar {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.render())
    }
}

/// Split `m` as `e^2 * c` with `c` square-free (sign preserved in `c`).
///
/// Square factors are extracted by trial division up to 10^4 and a final
/// perfect-square check, which is exhaustive for |m| < 10^8; larger radicands
/// may keep a square factor of a huge prime, which affects canonicity only,
/// never correctness.
pub fn extract_square(m: &BigInt) -> (BigInt, BigInt) {
    if m.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let negative = m.is_negative();
    let mut rest = m.abs();
    let mut outer = BigInt::one();
    let mut d = BigInt::from(2u32);
    let cap = BigInt::from(10_000u32);
    while d <= cap && (&d * &d) <= rest {
        let d2 = &d * &d;
        while (&rest % &d2).is_zero() {
            rest /= &d2;
            outer *= &d;
        }
        d += 1u32;
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        outer *= &root;
        rest = BigInt::one();
    }
    if negative {
        rest = -rest;
    }
    (outer, rest)
}

/// Exact square root of a rational when it is a perfect square of a
/// rational; otherwise the pair `(scale, radicand)` with
/// `sqrt(q) = scale * sqrt(radicand)` and square-free radicand.
pub fn sqrt_decompose(q: &Rational) -> (Rational, BigInt) {
    if q.is_zero() {
        return (Rational::zero(), BigInt::one());
    }
    // sqrt(p/d) = sqrt(p d)/d
    let pd = q.numer() * q.denom();
    let (outer, rest) = extract_square(&pd);
    (Rational::new(outer, q.denom().clone()), rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    #[test]
    fn field_arithmetic_in_q_sqrt2() {
        let r = Scalar::surd(rat_int(0), rat_int(1), BigInt::from(2)); // sqrt 2
        let x = Scalar::surd(rat_int(1), rat_int(1), BigInt::from(2)); // 1 + sqrt 2
        assert_eq!(r.mul(&r).unwrap(), Scalar::Rat(rat_int(2)));
        // (1 + sqrt2)(1 - sqrt2) = -1
        assert_eq!(x.mul(&x.conjugate()).unwrap(), Scalar::Rat(rat_int(-1)));
        // division round-trips
        let y = x.div(&r).unwrap();
        assert_eq!(y.mul(&r).unwrap(), x);
    }

    #[test]
    fn mixing_radicands_fails() {
        let a = Scalar::surd(rat_int(0), rat_int(1), BigInt::from(2));
        let b = Scalar::surd(rat_int(0), rat_int(1), BigInt::from(3));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn surds_collapse_to_rationals() {
        let a = Scalar::surd(rat_int(3), rat_int(2), BigInt::from(2));
        let b = Scalar::surd(rat_int(1), rat_int(-2), BigInt::from(2));
        assert_eq!(a.add(&b).unwrap(), Scalar::Rat(rat_int(4)));
    }

    #[test]
    fn square_extraction() {
        let (e, c) = extract_square(&BigInt::from(32));
        assert_eq!((e, c), (BigInt::from(4), BigInt::from(2)));
        let (e, c) = extract_square(&BigInt::from(-75));
        assert_eq!((e, c), (BigInt::from(5), BigInt::from(-3)));
        let (e, c) = extract_square(&BigInt::from(49));
        assert_eq!((e, c), (BigInt::from(7), BigInt::from(1)));
    }

    #[test]
    fn sqrt_of_rational() {
        // sqrt(8) = 2 sqrt 2
        let (s, c) = sqrt_decompose(&rat_int(8));
        assert_eq!((s, c), (rat_int(2), BigInt::from(2)));
        // sqrt(1/2) = (1/2) sqrt 2
        let (s, c) = sqrt_decompose(&rat(1, 2));
        assert_eq!((s, c), (rat(1, 2), BigInt::from(2)));
        // sqrt(9/4) = 3/2 exactly
        let (s, c) = sqrt_decompose(&rat(9, 4));
        assert_eq!((s, c), (rat(3, 2), BigInt::from(1)));
    }

    #[test]
    fn rendering() {
        assert_eq!(
            Scalar::surd(rat_int(-5), rat_int(2), BigInt::from(2)).render(),
            "-5 + 2*sqrt(2)"
        );
        assert_eq!(
            Scalar::surd(rat_int(0), rat(-1, 2), BigInt::from(6)).render(),
            "-1/2*sqrt(6)"
        );
        assert_eq!(
            Scalar::surd(rat_int(3), rat_int(-2), BigInt::from(2)).render(),
            "3 - 2*sqrt(2)"
        );
    }
}
