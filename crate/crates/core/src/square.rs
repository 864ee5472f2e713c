//! Square completion: the unique decomposition of a monic even-degree
//! polynomial as `(x^n + B(x))^2 + C(x)` with `deg B, deg C < n`.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{rat, MultiPoly, VarRegistry, XPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareForm {
    n: usize,
    b: XPoly,
    c: XPoly,
    registry: Arc<VarRegistry>,
}

impl SquareForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &XPoly {
        &self.b
    }

    pub fn c(&self) -> &XPoly {
        &self.c
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    /// `W = x^n + B`, the square root of the leading block.
    pub fn w(&self) -> XPoly {
        XPoly::x_pow(self.registry.clone(), self.n)
            .checked_add(&self.b)
            .expect("same registry")
    }

    /// `(x^n + B)^2 + C`, which must reproduce the decomposed input.
    pub fn reconstruct(&self) -> XPoly {
        let w = self.w();
        w.checked_mul(&w)
            .and_then(|w2| w2.checked_add(&self.c))
            .expect("same registry")
    }

    /// Coefficient `c_k` of the remainder.
    pub fn c_coeff(&self, k: usize) -> MultiPoly {
        self.c.coeff(k, &self.registry)
    }
}

/// Decompose a monic polynomial of degree `2n`. Each step solves `b_i` from
/// the coefficient of `x^{n+i}` in strictly descending `i`, dividing only by
/// two, so coefficients stay inside `Q[parameters]`.
pub fn complete_square(v: &XPoly, n: usize) -> Result<SquareForm> {
    let registry = v.registry().cloned().ok_or_else(|| {
        Error::Usage("cannot complete the square of the zero polynomial".to_string())
    })?;
    match v.degree() {
        Some(d) if d == 2 * n => {}
        Some(d) if d % 2 == 1 => {
            return Err(Error::Usage(format!(
                "potential has odd degree {d}; square completion requires even degree"
            )))
        }
        Some(d) => {
            return Err(Error::Usage(format!(
                "degree mismatch: potential has degree {d}, expected {}",
                2 * n
            )))
        }
        None => {
            return Err(Error::Usage(
                "cannot complete the square of the zero polynomial".to_string(),
            ))
        }
    }
    if !v.is_monic() {
        return Err(Error::Usage("potential must be monic".to_string()));
    }

    // b_i from coefficient matching at x^{n+i}:
    //   a_{n+i} = 2 b_i + sum_{j+k = n+i, i < j,k <= n-1} b_j b_k
    let mut b_coeffs: Vec<MultiPoly> = alloc::vec![MultiPoly::zero(registry.clone()); n];
    for i in (0..n).rev() {
        let mut cross = MultiPoly::zero(registry.clone());
        for j in (i + 1)..n {
            let k = n + i - j;
            if k < n && k > i {
                cross = cross.checked_add(&b_coeffs[j].checked_mul(&b_coeffs[k])?)?;
            }
        }
        let a = v.coeff(n + i, &registry);
        b_coeffs[i] = a.checked_sub(&cross)?.scale(&rat(1, 2));
    }
    let b = XPoly::from_coeffs(b_coeffs);

    let w = XPoly::x_pow(registry.clone(), n).checked_add(&b)?;
    let c = v.checked_sub(&w.checked_mul(&w)?)?;
    if let Some(dc) = c.degree() {
        if n == 0 || dc > n - 1 {
            return Err(Error::Internal(format!(
                "square completion remainder has degree {dc}, expected < {n}"
            )));
        }
    }
    Ok(SquareForm { n, b, c, registry })
}

/// Square form of `V - lambda`: identical `B`, constant coefficient of `C`
/// shifted by `-lambda`.
pub fn shift_by_lambda(sf: &SquareForm) -> Result<SquareForm> {
    let lam = sf
        .registry
        .lambda_index()
        .ok_or_else(|| Error::Usage("eigenvalue variable not registered".to_string()))?;
    let lam_poly = XPoly::constant(MultiPoly::var(sf.registry.clone(), lam)?);
    let c = sf.c.checked_sub(&lam_poly)?;
    Ok(SquareForm {
        n: sf.n,
        b: sf.b.clone(),
        c,
        registry: sf.registry.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_potential;

    #[test]
    fn quartic_decomposition() {
        let (v, _) = parse_potential("x^4+4*x^3+2*x^2-mu*x").unwrap();
        let sf = complete_square(&v, 2).unwrap();
        assert_eq!(sf.b().render(), "2*x - 1");
        assert_eq!(sf.c().render(), "(-mu + 4)*x - 1");
        assert_eq!(sf.reconstruct(), v);
    }

    #[test]
    fn pure_square_has_zero_remainder() {
        let (v, _) = parse_potential("x^2").unwrap();
        let sf = complete_square(&v, 1).unwrap();
        assert!(sf.b().is_zero());
        assert!(sf.c().is_zero());
    }

    #[test]
    fn decatic_decomposition() {
        let (v, _) = parse_potential("x^10-x^8+x^6+delta*x^4+epsilon*x^2").unwrap();
        let sf = complete_square(&v, 5).unwrap();
        assert_eq!(sf.b().render(), "-1/2*x^3 + 3/8*x");
        assert_eq!(sf.c().render(), "(delta + 3/8)*x^4 + (epsilon - 9/64)*x^2");
        assert_eq!(sf.reconstruct(), v);
    }

    #[test]
    fn dodecatic_decomposition() {
        let (v, _) = parse_potential("x^12+kappa*x^6+mu*x^5").unwrap();
        let sf = complete_square(&v, 6).unwrap();
        assert_eq!(sf.b().render(), "1/2*kappa");
        assert_eq!(sf.c().render(), "mu*x^5 - 1/4*kappa^2");
        assert_eq!(sf.reconstruct(), v);
    }

    #[test]
    fn non_monic_and_odd_rejected() {
        let (v, _) = parse_potential("2*x^4").unwrap();
        assert!(complete_square(&v, 2).is_err());
        let (v, _) = parse_potential("x^3").unwrap();
        assert!(complete_square(&v, 1).is_err());
    }

    #[test]
    fn lambda_shift_moves_only_the_constant() {
        let (v, _) = parse_potential("x^4+4*x^3+2*x^2-mu*x").unwrap();
        let sf = shift_by_lambda(&complete_square(&v, 2).unwrap()).unwrap();
        assert_eq!(sf.c().render(), "(-mu + 4)*x - lambda - 1");
        assert_eq!(sf.b().render(), "2*x - 1");

        let (v, _) = parse_potential("x^2").unwrap();
        let sf = shift_by_lambda(&complete_square(&v, 1).unwrap()).unwrap();
        assert_eq!(sf.c().render(), "-lambda");
    }

    #[test]
    fn perturbing_b_breaks_reconstruction() {
        let (v, _) = parse_potential("x^10-x^8+x^6+delta*x^4+epsilon*x^2").unwrap();
        let sf = complete_square(&v, 5).unwrap();
        let reg = sf.registry().clone();
        let bumped = sf
            .b()
            .checked_add(&XPoly::x_pow(reg.clone(), 2).scale(&rat(1, 7)))
            .unwrap();
        let w = XPoly::x_pow(reg, 5).checked_add(&bumped).unwrap();
        let rebuilt = w.checked_mul(&w).unwrap().checked_add(sf.c()).unwrap();
        assert_ne!(rebuilt, v);
    }
}
