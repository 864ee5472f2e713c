//! Monomials as exponent vectors and the lex monomial order.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector, one entry per registry variable.
///
/// The derived `Ord` compares exponents left to right, which is exactly the
/// lexicographic order with registry position as priority. Monomials from
/// different registries must never be compared; lengths are equal by
/// construction within one computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn var(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure `self.divides(other)`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// A lex monomial order described by a priority permutation of the registry.
///
/// The identity permutation (registry order itself) is the block elimination
/// order ansatz ≻ eigenvalue ≻ parameter used everywhere in the pipeline;
/// other permutations are accepted as long as the caller keeps them
/// block-respecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    priority: Vec<usize>,
    identity: bool,
}

impl MonomialOrder {
    pub fn lex_identity(len: usize) -> Self {
        MonomialOrder {
            priority: (0..len).collect(),
            identity: true,
        }
    }

    /// Lex order along an explicit priority permutation (index 0 = highest).
    pub fn lex_with_priority(priority: Vec<usize>) -> Self {
        let identity = priority.iter().enumerate().all(|(i, &p)| i == p);
        MonomialOrder { priority, identity }
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.identity {
            return a.cmp(b);
        }
        for &i in &self.priority {
            match a.exponent(i).cmp(&b.exponent(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Free-function form used by callers that hold an order by reference.
pub fn monomial_compare(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Ordering {
    order.compare(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_compares_high_priority_first() {
        // registry [p0, lambda]: p0^2 vs p0*lambda^3
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 3]);
        let ord = MonomialOrder::lex_identity(2);
        assert_eq!(ord.compare(&a, &b), Ordering::Greater);
        assert_eq!(ord.compare(&b, &b), Ordering::Equal);
    }

    #[test]
    fn block_priority_dominates_degree() {
        // registry [lambda, epsilon]: lambda^2 > epsilon^5
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![0, 5]);
        let ord = MonomialOrder::lex_identity(2);
        assert_eq!(ord.compare(&a, &b), Ordering::Greater);
    }

    #[test]
    fn order_is_multiplicative_and_unit_minimal() {
        let ord = MonomialOrder::lex_identity(3);
        let u = Monomial::from_exponents(vec![0, 1, 2]);
        let v = Monomial::from_exponents(vec![0, 2, 0]);
        let w = Monomial::from_exponents(vec![1, 0, 5]);
        let uv = ord.compare(&u, &v);
        assert_eq!(ord.compare(&u.mul(&w), &v.mul(&w)), uv);
        assert_eq!(
            ord.compare(&Monomial::unit(3), &w),
            core::cmp::Ordering::Less
        );
    }
}
