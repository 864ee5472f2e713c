//! Ansatz substitution: plug the monic degree-`s` polynomial
//! `P = x^s + p_{s-1} x^{s-1} + ... + p_0` into an auxiliary ODE and collect
//! the coefficients in `x` into ideal generators.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{MultiPoly, VarRegistry, XPoly};
use crate::characterize::{AuxiliaryOde, Quantization};
use crate::error::{Error, Result};

/// The polynomial system produced by one `(sign, s)` case.
#[derive(Debug, Clone)]
pub struct AnsatzSystem {
    pub s: usize,
    /// Extended registry carrying `p_{s-1}, ..., p_0` ahead of the base
    /// variables.
    pub registry: Arc<VarRegistry>,
    /// Ideal generators over the extended registry: the nonzero
    /// `x`-coefficients of the residual plus any variable-bearing
    /// quantization constraints.
    pub generators: Vec<MultiPoly>,
}

/// Substitute the monic ansatz into the ODE. Returns the residual
/// `P'' + A1 P' + A0 P` over the extended registry.
pub fn ansatz_residual(ode: &AuxiliaryOde, s: usize) -> Result<(XPoly, Arc<VarRegistry>)> {
    let base = ode
        .a1
        .registry()
        .or_else(|| ode.a0.registry())
        .ok_or_else(|| Error::Usage("degenerate ODE with zero coefficients".into()))?
        .clone();
    let ext = base.with_ansatz(s)?;
    let a1 = ode.a1.remap(&ext)?;
    let a0 = ode.a0.remap(&ext)?;

    let mut p = XPoly::x_pow(ext.clone(), s);
    for j in 0..s {
        let pj = MultiPoly::var(ext.clone(), ext.ansatz_index(j).unwrap())?;
        let term = XPoly::x_pow(ext.clone(), j).scale_poly(&pj)?;
        p = p.checked_add(&term)?;
    }

    let dp = p.derivative_x();
    let ddp = dp.derivative_x();
    let residual = ddp
        .checked_add(&a1.checked_mul(&dp)?)?
        .checked_add(&a0.checked_mul(&p)?)?;
    Ok((residual, ext))
}

/// Collect the residual into generators and adjoin variable-bearing
/// quantization constraints.
///
/// Asserts the leading cancellation law: the coefficient of `x^{s+n-1}` in
/// the residual equals the quantization polynomial up to sign, so it
/// vanishes on the constraint locus. A violation is a branch-pairing bug.
pub fn build_system(
    residual: &XPoly,
    n: usize,
    s: usize,
    quantizations: &[&Quantization],
    registry: &Arc<VarRegistry>,
) -> Result<AnsatzSystem> {
    if n >= 1 {
        if let Some(d) = residual.degree() {
            if d > s + n - 1 {
                return Err(Error::Internal(format!(
                    "residual degree {d} exceeds s+n-1 = {}",
                    s + n - 1
                )));
            }
        }
        let lead = residual.coeff(s + n - 1, registry);
        let mut matched = lead.is_zero();
        for q in quantizations {
            let qc = q.constraint.remap(registry)?;
            if lead == qc || lead == qc.neg() {
                matched = true;
            }
        }
        if !matched {
            return Err(Error::Internal(format!(
                "leading coefficient `{}` does not cancel against the quantization constraint",
                lead.render()
            )));
        }
    }

    let mut generators: Vec<MultiPoly> = residual
        .x_coefficients()
        .into_iter()
        .map(|(_, c)| c.clone())
        .collect();
    for q in quantizations {
        let qc = q.constraint.remap(registry)?;
        if !qc.is_zero() {
            generators.push(qc);
        }
    }
    Ok(AnsatzSystem {
        s,
        registry: registry.clone(),
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_potential;
    use crate::characterize::{auxiliary_ode, quantization, BranchSign};
    use crate::square::{complete_square, shift_by_lambda};

    fn case(src: &str, n: usize, sign: BranchSign, s: usize) -> AnsatzSystem {
        let (v, _) = parse_potential(src).unwrap();
        let sf = shift_by_lambda(&complete_square(&v, n).unwrap()).unwrap();
        let q = quantization(&sf, s, sign).unwrap();
        let ode = auxiliary_ode(&sf, sign).unwrap();
        let (residual, ext) = ansatz_residual(&ode, s).unwrap();
        build_system(&residual, n, s, &[&q], &ext).unwrap()
    }

    #[test]
    fn quartic_plus_s0_symbolic_mu() {
        // residual = (mu-2) x + 3 + lambda with P = 1; generators are the
        // two coefficients plus the constraint mu - 2.
        let sys = case("x^4+4*x^3+2*x^2-mu*x", 2, BranchSign::Plus, 0);
        let rendered: Vec<_> = sys.generators.iter().map(|g| g.render()).collect();
        assert_eq!(rendered, vec!["mu - 2", "lambda + 3", "-mu + 2"]);
    }

    #[test]
    fn quartic_plus_s1_mu_bound() {
        // mu = 0 bound before construction
        let (v, _) = parse_potential("x^4+4*x^3+2*x^2-mu*x").unwrap();
        let reg = v.registry().unwrap().clone();
        let mu = reg.index_of("mu").unwrap();
        let v = v.substitute(mu, &crate::algebra::rat_int(0));
        let sf = shift_by_lambda(&complete_square(&v, 2).unwrap()).unwrap();
        let q = quantization(&sf, 1, BranchSign::Plus).unwrap();
        // constraint -mu with mu = 0 bound is identically satisfied
        assert_eq!(
            q.disposition(),
            crate::characterize::QuantDisposition::Satisfied
        );
        let ode = auxiliary_ode(&sf, BranchSign::Plus).unwrap();
        let (residual, ext) = ansatz_residual(&ode, 1).unwrap();
        let sys = build_system(&residual, 2, 1, &[&q], &ext).unwrap();
        let rendered: Vec<_> = sys.generators.iter().map(|g| g.render()).collect();
        assert_eq!(rendered, vec!["-2*p0 + lambda + 7", "p0*lambda + 3*p0 - 2"]);
    }

    #[test]
    fn sextic_case1_s2() {
        // J = 2: V = x^6 - 7 x^2, minus branch, s = 2
        let sys = case("x^6-7*x^2", 3, BranchSign::Minus, 2);
        let rendered: Vec<_> = sys.generators.iter().map(|g| g.render()).collect();
        assert_eq!(
            rendered,
            vec!["2*p1", "4*p0 + lambda", "p1*lambda", "p0*lambda + 2"]
        );
    }

    #[test]
    fn generator_count_bound() {
        // at most s + n coefficient generators for every family
        for (src, n) in [
            ("x^4+4*x^3+2*x^2-mu*x", 2usize),
            ("x^6-7*x^2", 3),
            ("x^10-x^8+x^6+delta*x^4+epsilon*x^2", 5),
            ("x^12+kappa*x^6+mu*x^5", 6),
        ] {
            for s in 0..=4usize {
                for sign in [BranchSign::Plus, BranchSign::Minus] {
                    let sys = case(src, n, sign, s);
                    // one extra generator allowed for the adjoined constraint
                    assert!(
                        sys.generators.len() <= s + n + 1,
                        "too many generators for {src} s={s}"
                    );
                }
            }
        }
    }

    /// Generators are jointly at most quadratic: affine in the unknowns and
    /// affine in lambda.
    #[test]
    fn generators_are_low_degree() {
        let sys = case(
            "x^10-x^8+x^6+delta*x^4+epsilon*x^2",
            5,
            BranchSign::Minus,
            3,
        );
        let lam = sys.registry.lambda_index().unwrap();
        for g in &sys.generators {
            assert!(g.degree_in(lam) <= 1);
            for j in 0..sys.s {
                assert!(g.degree_in(sys.registry.ansatz_index(j).unwrap()) <= 1);
            }
        }
    }
}
