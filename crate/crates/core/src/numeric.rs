//! Certified numeric layer: fixed-point decimal arithmetic on `BigInt`
//! mantissas, simultaneous root refinement (Aberth–Ehrlich), and exact
//! complex-rational arithmetic for residual certification.
//!
//! Floating point never appears: a "numeric" value is a mantissa over an
//! implicit power-of-ten scale, so every intermediate is an exact rational
//! and residual bounds can be certified by exact substitution afterwards.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Fixed-point context: values are `mantissa / 10^scale`.
#[derive(Debug, Clone)]
pub struct NumCtx {
    scale: u32,
    pow: BigInt,
}

impl NumCtx {
    pub fn new(scale: u32) -> Self {
        NumCtx {
            scale,
            pow: BigInt::from(10u32).pow(scale),
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn unit(&self) -> &BigInt {
        &self.pow
    }

    /// Round `r * 10^scale` to the nearest integer.
    pub fn fix(&self, r: &Rational) -> BigInt {
        let scaled = r * Rational::from(self.pow.clone());
        round_rational(&scaled)
    }

    /// Exact rational value of a mantissa.
    pub fn unfix(&self, m: &BigInt) -> Rational {
        Rational::new(m.clone(), self.pow.clone())
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        round_div(&(a * b), &self.pow)
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if b.is_zero() {
            return Err(Error::Internal("fixed-point division by zero".to_string()));
        }
        Ok(round_div(&(a * &self.pow), b))
    }
}

fn round_rational(r: &Rational) -> BigInt {
    round_div(r.numer(), r.denom())
}

/// Round-half-away-from-zero integer division.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2u32);
    let (mut q, r) = num_integer::Integer::div_rem(num, den);
    if (&r * &two).abs() >= den.abs() {
        if (num.is_negative()) ^ (den.is_negative()) {
            q -= 1u32;
        } else {
            q += 1u32;
        }
    }
    q
}

/// Complex fixed-point number over a shared [`NumCtx`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFix {
    pub re: BigInt,
    pub im: BigInt,
}

impl CFix {
    pub fn zero() -> Self {
        CFix {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn from_re(re: BigInt) -> Self {
        CFix {
            re,
            im: BigInt::zero(),
        }
    }

    pub fn add(&self, o: &CFix) -> CFix {
        CFix {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &CFix) -> CFix {
        CFix {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &CFix, ctx: &NumCtx) -> CFix {
        CFix {
            re: ctx.mul(&self.re, &o.re) - ctx.mul(&self.im, &o.im),
            im: ctx.mul(&self.re, &o.im) + ctx.mul(&self.im, &o.re),
        }
    }

    pub fn div(&self, o: &CFix, ctx: &NumCtx) -> Result<CFix> {
        let norm = ctx.mul(&o.re, &o.re) + ctx.mul(&o.im, &o.im);
        let conj_re = ctx.mul(&self.re, &o.re) + ctx.mul(&self.im, &o.im);
        let conj_im = ctx.mul(&self.im, &o.re) - ctx.mul(&self.re, &o.im);
        Ok(CFix {
            re: ctx.div(&conj_re, &norm)?,
            im: ctx.div(&conj_im, &norm)?,
        })
    }

    /// 1-norm `|re| + |im|` as a mantissa; bounds the modulus from above.
    pub fn norm1(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Horner evaluation of a polynomial with fixed-point complex coefficients
/// (ascending order).
pub fn horner(coeffs: &[CFix], z: &CFix, ctx: &NumCtx) -> CFix {
    let mut acc = CFix::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, ctx).add(c);
    }
    acc
}

/// `e^{i theta}` by fixed-point Taylor summation; `theta` is a mantissa.
fn cexp_i(theta: &BigInt, ctx: &NumCtx) -> CFix {
    let i_theta = CFix {
        re: BigInt::zero(),
        im: theta.clone(),
    };
    let mut term = CFix::from_re(ctx.unit().clone());
    let mut sum = term.clone();
    for m in 1..2_000u32 {
        term = term.mul(&i_theta, ctx);
        term = CFix {
            re: round_div(&term.re, &BigInt::from(m)),
            im: round_div(&term.im, &BigInt::from(m)),
        };
        if term.norm1().is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    sum
}

/// All complex roots of a square-free polynomial with rational coefficients
/// (ascending, leading coefficient nonzero, degree >= 1), refined to the
/// context scale. Returns exact rational approximations of each root.
pub fn aberth_roots(coeffs: &[Rational], digits: u32) -> Result<Vec<(Rational, Rational)>> {
    let degree = coeffs.len() - 1;
    if degree == 0 || coeffs.last().map(Zero::is_zero).unwrap_or(true) {
        return Err(Error::Usage(
            "root refinement needs a nonzero leading coefficient and positive degree".to_string(),
        ));
    }
    let ctx = NumCtx::new(digits + 12);
    let p: Vec<CFix> = coeffs.iter().map(|c| CFix::from_re(ctx.fix(c))).collect();
    let dp: Vec<CFix> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| CFix::from_re(ctx.fix(&(c * Rational::from(BigInt::from(k))))))
        .collect();

    // Cauchy-style inclusion radius: 1 + max |a_k / a_n|
    let lead = coeffs.last().unwrap();
    let mut radius = Rational::one();
    for c in &coeffs[..degree] {
        let ratio = (c / lead).abs();
        if ratio > radius {
            radius = ratio;
        }
    }
    radius += Rational::one();
    let radius_fix = ctx.fix(&radius);

    // guesses on a slightly offset circle; 2 pi ~ 710/113 is plenty for a guess
    let two_pi = Rational::new(BigInt::from(710), BigInt::from(113));
    let offset = Rational::new(BigInt::from(2), BigInt::from(5));
    let mut z: Vec<CFix> = (0..degree)
        .map(|k| {
            let theta = &two_pi * Rational::new(BigInt::from(k), BigInt::from(degree)) + &offset;
            let dir = cexp_i(&ctx.fix(&theta), &ctx);
            CFix {
                re: ctx.mul(&radius_fix, &dir.re),
                im: ctx.mul(&radius_fix, &dir.im),
            }
        })
        .collect();

    // convergence threshold: 10^-(digits+6) in mantissa units
    let eps = BigInt::from(10u32).pow(6);
    let one = CFix::from_re(ctx.unit().clone());
    let nudge = CFix {
        re: BigInt::from(10u32).pow(ctx.scale / 2),
        im: BigInt::from(7u32) * BigInt::from(10u32).pow(ctx.scale / 3),
    };

    for _ in 0..500 {
        let mut max_delta = BigInt::zero();
        for k in 0..degree {
            let fz = horner(&p, &z[k], &ctx);
            let dfz = horner(&dp, &z[k], &ctx);
            if dfz.is_zero() {
                z[k] = z[k].add(&nudge);
                max_delta = eps.clone() + 1u32;
                continue;
            }
            let w = fz.div(&dfz, &ctx)?;
            let mut sum = CFix::zero();
            let mut degenerate = false;
            for j in 0..degree {
                if j == k {
                    continue;
                }
                let diff = z[k].sub(&z[j]);
                if diff.is_zero() {
                    degenerate = true;
                    break;
                }
                sum = sum.add(&one.div(&diff, &ctx)?);
            }
            if degenerate {
                z[k] = z[k].add(&nudge);
                max_delta = eps.clone() + 1u32;
                continue;
            }
            let denom = one.sub(&w.mul(&sum, &ctx));
            let delta = if denom.is_zero() {
                w.clone()
            } else {
                w.div(&denom, &ctx)?
            };
            z[k] = z[k].sub(&delta);
            let d = delta.norm1();
            if d > max_delta {
                max_delta = d;
            }
        }
        if max_delta <= eps {
            return Ok(z
                .into_iter()
                .map(|r| (ctx.unfix(&r.re), ctx.unfix(&r.im)))
                .collect());
        }
    }
    Err(Error::Internal(
        "root refinement did not converge within the iteration cap".to_string(),
    ))
}

/// Exact complex rational, used to certify numeric roots and residuals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRat {
    pub re: Rational,
    pub im: Rational,
}

impl CRat {
    pub fn zero() -> Self {
        CRat {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn from_re(re: Rational) -> Self {
        CRat {
            re,
            im: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn mul_rat(&self, r: &Rational) -> CRat {
        CRat {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn div(&self, o: &CRat) -> Result<CRat> {
        let norm = &o.re * &o.re + &o.im * &o.im;
        if norm.is_zero() {
            return Err(Error::Usage("complex division by zero".to_string()));
        }
        let conj = CRat {
            re: o.re.clone(),
            im: -o.im.clone(),
        };
        Ok(self.mul(&conj).mul_rat(&(Rational::one() / norm)))
    }

    pub fn pow(&self, e: u32) -> CRat {
        let mut out = CRat::from_re(Rational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `|re| + |im|`: an upper bound for the modulus within a factor sqrt 2.
    pub fn norm1(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }
}

/// Exact evaluation of a rational-coefficient polynomial at a complex
/// rational point (coefficients ascending).
pub fn eval_crat(coeffs: &[Rational], z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&CRat::from_re(c.clone()));
    }
    acc
}

/// Decimal rendering of an exact rational to `digits` fractional digits
/// (round-half-away-from-zero, trailing zeros trimmed).
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let pow = BigInt::from(10u32).pow(digits);
    let mantissa = round_rational(&(r * Rational::from(pow.clone())));
    let negative = mantissa.is_negative();
    let abs = mantissa.abs();
    let (int_part, frac_part) = num_integer::Integer::div_rem(&abs, &pow);
    let mut frac = frac_part.to_string();
    while frac.len() < digits as usize {
        frac.insert(0, '0');
    }
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if negative && (!int_part.is_zero() || !frac.is_empty()) {
        "-"
    } else {
        ""
    };
    if frac.is_empty() {
        alloc::format!("{sign}{int_part}")
    } else {
        alloc::format!("{sign}{int_part}.{frac}")
    }
}

/// Square root of a non-negative integer scaled to `digits` fractional
/// digits: `floor_sqrt(n * 10^(2 digits)) / 10^digits` as an exact rational.
pub fn sqrt_decimal(n: &BigInt, digits: u32) -> Result<Rational> {
    if n.is_negative() {
        return Err(Error::Usage(
            "square root of a negative integer".to_string(),
        ));
    }
    let pow = BigInt::from(10u32).pow(digits);
    let scaled = n * &pow * &pow;
    Ok(Rational::new(scaled.sqrt(), pow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    #[test]
    fn rounding_division() {
        assert_eq!(
            round_div(&BigInt::from(7), &BigInt::from(2)),
            BigInt::from(4)
        );
        assert_eq!(
            round_div(&BigInt::from(-7), &BigInt::from(2)),
            BigInt::from(-4)
        );
        assert_eq!(
            round_div(&BigInt::from(6), &BigInt::from(4)),
            BigInt::from(2)
        );
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 2), 10), "0.5");
        assert_eq!(decimal_string(&rat(-1, 3), 5), "-0.33333");
        assert_eq!(decimal_string(&rat_int(42), 10), "42");
    }

    #[test]
    fn sqrt_decimal_two() {
        let s = sqrt_decimal(&BigInt::from(2), 30).unwrap();
        let txt = decimal_string(&s, 30);
        assert!(txt.starts_with("1.4142135623730950488016887242"));
    }

    #[test]
    fn aberth_on_a_cubic_with_known_roots() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let coeffs = vec![rat_int(6), rat_int(-7), rat_int(0), rat_int(1)];
        let roots = aberth_roots(&coeffs, 40).unwrap();
        assert_eq!(roots.len(), 3);
        for (re, im) in &roots {
            let z = CRat {
                re: re.clone(),
                im: im.clone(),
            };
            let residual = eval_crat(&coeffs, &z);
            assert!(
                residual.norm1() < rat(1, 1_000_000_000),
                "residual too large"
            );
        }
        // all roots real to working precision
        for (_, im) in &roots {
            assert!(im.abs() < rat(1, 10_000_000_000));
        }
    }

    #[test]
    fn aberth_on_complex_pair() {
        // x^2 + 1
        let coeffs = vec![rat_int(1), rat_int(0), rat_int(1)];
        let roots = aberth_roots(&coeffs, 40).unwrap();
        assert_eq!(roots.len(), 2);
        for (re, im) in &roots {
            assert!(re.abs() < rat(1, 10_000_000_000));
            assert!((im.abs() - rat_int(1)).abs() < rat(1, 10_000_000_000));
        }
    }
}
