//! The scalar type: normalized arbitrary-precision fractions.
//!
//! `BigRational` already maintains the invariants the engine relies on
//! (denominator positive, fraction fully reduced, zero stored as 0/1), so it
//! is used directly rather than wrapped.

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn normalization_invariants() {
        let r = rat(-4, -6);
        assert_eq!(r, rat(2, 3));
        assert!(r.denom().is_positive());

        let z = rat(0, 5);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));

        // gcd(|numer|, denom) = 1 after construction
        let r = rat(12, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(rat(3, 1).to_string(), "3");
        assert_eq!(rat(-1, 2).to_string(), "-1/2");
    }
}
