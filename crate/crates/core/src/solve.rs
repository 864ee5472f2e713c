//! Per-case pipeline: square completion through verified eigenpairs for one
//! `(sign, s)` combination.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{MonomialOrder, MultiPoly, Rational, VarRegistry, XPoly};
use crate::ansatz::{ansatz_residual, build_system};
use crate::characterize::{auxiliary_ode, exponent, quantization, BranchSign, Quantization};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_reduced, GroebnerBasis, GroebnerConfig};
use crate::spectral::{
    back_substitute, classify_state, roots, spectral_extract, to_univariate, verify_eigenpair,
    Eigenpair, SpectralResult, Verdict,
};
use crate::square::{complete_square, shift_by_lambda};

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub groebner: GroebnerConfig,
    /// Relative residual tolerance for certified numeric data.
    pub tolerance: Rational,
    /// Decimal digits carried by numeric approximations.
    pub precision: u32,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            groebner: GroebnerConfig::default(),
            tolerance: Rational::new(BigInt::one(), BigInt::from(10u64.pow(10))),
            precision: 50,
        }
    }
}

/// Everything one `(sign, s)` case produces.
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub sign: BranchSign,
    pub s: usize,
    pub n: usize,
    pub quantization: Quantization,
    pub quant_unsatisfiable: bool,
    /// Extended registry with the ansatz unknowns.
    pub registry: Arc<VarRegistry>,
    pub generators: Vec<MultiPoly>,
    /// Reduced basis over the symbolic parameters; absent on budget failure.
    pub basis: Option<GroebnerBasis>,
    pub budget_error: Option<String>,
    pub spectral: Option<SpectralResult>,
    /// Eigenfunction exponent `f` over the base registry (parameters left
    /// symbolic).
    pub exponent: XPoly,
}

/// Run the whole pipeline for one case of an even monic potential of degree
/// `2n` with `n >= 1`.
pub fn solve_case(
    v: &XPoly,
    n: usize,
    sign: BranchSign,
    s: usize,
    cfg: &SolveConfig,
) -> Result<CaseOutcome> {
    let sf = complete_square(v, n)?;
    let sf_lambda = shift_by_lambda(&sf)?;
    let quant = quantization(&sf_lambda, s, sign)?;
    let quant_unsatisfiable = matches!(
        quant.disposition(),
        crate::characterize::QuantDisposition::Unsatisfiable
    );
    let ode = auxiliary_ode(&sf_lambda, sign)?;
    let (residual, ext) = ansatz_residual(&ode, s)?;
    let system = build_system(&residual, n, s, &[&quant], &ext)?;
    let order = MonomialOrder::lex_identity(ext.len());
    let f = exponent(&sf).f;

    let mut outcome = CaseOutcome {
        sign,
        s,
        n,
        quantization: quant,
        quant_unsatisfiable,
        registry: ext.clone(),
        generators: system.generators.clone(),
        basis: None,
        budget_error: None,
        spectral: None,
        exponent: f.clone(),
    };

    let basis = match buchberger_reduced(&system.generators, &order, &cfg.groebner) {
        Ok(b) => b,
        Err(Error::Budget(msg)) => {
            outcome.budget_error = Some(msg);
            return Ok(outcome);
        }
        Err(e) => return Err(e),
    };
    let mut spectral = spectral_extract(&basis, &ext, s)?;
    outcome.basis = Some(basis);

    if spectral.verdict == Verdict::Integrable {
        enumerate_eigenpairs(&mut spectral, &outcome, &ode, &f, &order, cfg)?;
    }
    outcome.spectral = Some(spectral);
    Ok(outcome)
}

/// When every parameter is pinned to a rational, substitute, recompute the
/// now-numeric basis, and walk the spectrum.
fn enumerate_eigenpairs(
    spectral: &mut SpectralResult,
    outcome: &CaseOutcome,
    ode: &crate::characterize::AuxiliaryOde,
    f: &XPoly,
    order: &MonomialOrder,
    cfg: &SolveConfig,
) -> Result<()> {
    let ext = &outcome.registry;
    let lambda_idx = match ext.lambda_index() {
        Some(i) => i,
        None => return Ok(()),
    };
    // every parameter must be pinned or absent from the system
    let pinned: Vec<(usize, Rational)> = spectral
        .pinned_params
        .iter()
        .filter_map(|(name, r)| ext.index_of(name).map(|i| (i, r.clone())))
        .collect();
    let pinned_set: alloc::collections::BTreeSet<usize> = pinned.iter().map(|(i, _)| *i).collect();
    for g in &outcome.generators {
        for v in g.used_vars() {
            if ext.block(v) == crate::algebra::Block::Parameter && !pinned_set.contains(&v) {
                return Ok(()); // symbolic parameters remain: report stays symbolic
            }
        }
    }

    let substitute_all = |p: &MultiPoly| -> MultiPoly {
        let mut out = p.clone();
        for (i, r) in &pinned {
            out = out.substitute(*i, r);
        }
        out
    };
    let numeric_basis = if pinned.is_empty() {
        match &outcome.basis {
            Some(b) => b.clone(),
            None => return Ok(()),
        }
    } else {
        let gens: Vec<MultiPoly> = outcome.generators.iter().map(&substitute_all).collect();
        match buchberger_reduced(&gens, order, &cfg.groebner) {
            Ok(b) => b,
            Err(Error::Budget(_)) => return Ok(()),
            Err(e) => return Err(e),
        }
    };
    if numeric_basis.is_unit_ideal() || numeric_basis.is_zero_ideal() {
        return Ok(());
    }

    // spectral polynomial: the unique pure-lambda element
    let elim = crate::groebner::eliminate(
        &numeric_basis,
        &[
            crate::algebra::Block::Eigenvalue,
            crate::algebra::Block::Parameter,
        ],
        ext,
    )?;
    let mut t_candidates: Vec<&MultiPoly> = Vec::new();
    for e in &elim {
        if e.uses_var(lambda_idx) {
            t_candidates.push(e);
        }
    }
    if t_candidates.len() != 1 {
        return Ok(());
    }
    let t_coeffs = match to_univariate(t_candidates[0], lambda_idx) {
        Ok(c) => c,
        Err(_) => return Ok(()),
    };
    spectral.t_poly = Some(t_candidates[0].clone());

    // bind pinned parameters inside the verification ODE and the exponent
    let mut a1 = ode.a1.clone();
    let mut a0 = ode.a0.clone();
    let mut f_pinned = f.clone();
    for (i, r) in &pinned {
        // base registry indices may differ from the extended ones
        let base_reg = ode.a1.registry().or(ode.a0.registry());
        if let Some(base_reg) = base_reg {
            if let Some(bi) = base_reg.index_of(ext.name(*i)) {
                a1 = a1.substitute(bi, r);
                a0 = a0.substitute(bi, r);
                f_pinned = f_pinned.substitute(bi, r);
            }
        }
    }
    let pinned_ode = crate::characterize::AuxiliaryOde {
        sign: ode.sign,
        a1,
        a0,
    };
    let base_reg = match pinned_ode.a1.registry().or(pinned_ode.a0.registry()) {
        Some(r) => r.clone(),
        None => return Ok(()),
    };
    // after pinning, the verification data must be lambda-only (A1 may keep
    // free parameters when the factor is constant and never multiplies it)
    if let Some(lam) = base_reg.lambda_index() {
        let lambda_only = |a: &XPoly| -> bool {
            a.x_coefficients()
                .iter()
                .all(|(_, c)| to_univariate(c, lam).is_ok())
        };
        if !lambda_only(&pinned_ode.a0) || (outcome.s >= 1 && !lambda_only(&pinned_ode.a1)) {
            return Ok(());
        }
    } else {
        return Ok(());
    }
    let f_real = f_pinned
        .x_coefficients()
        .iter()
        .all(|(_, c)| c.constant_value().is_some());

    spectral.eigenvalues = roots(&t_coeffs, cfg.precision, &cfg.tolerance)?;

    // numeric back-substitution slack: far below any honest inconsistency,
    // far above the root approximation error
    let slack = Rational::new(
        BigInt::one(),
        BigInt::from(10u32).pow(cfg.precision / 2 + 5),
    );
    // realness threshold for classification: the certified digits of a root
    let realness_eps = Rational::new(BigInt::one(), BigInt::from(10u32).pow(cfg.precision));
    for ev in &spectral.eigenvalues {
        let ps = back_substitute(&numeric_basis, ext, outcome.s, &ev.value, Some(&slack))?;
        for p in ps {
            let residual = verify_eigenpair(&pinned_ode, &base_reg, &ev.value, &p, &cfg.tolerance)?;
            let bound_state = classify_state(
                outcome.sign,
                outcome.n,
                &ev.value,
                &p,
                f_real,
                &realness_eps,
            );
            spectral.eigenpairs.push(Eigenpair {
                lambda: ev.clone(),
                p,
                sign: outcome.sign,
                f: f_pinned.clone(),
                bound_state,
                residual,
            });
        }
    }
    Ok(())
}

/// Substitute problem-file parameter bindings into a parsed potential.
pub fn bind_parameters(
    v: &XPoly,
    registry: &Arc<VarRegistry>,
    bindings: &[(String, Rational)],
) -> Result<XPoly> {
    let mut out = v.clone();
    for (name, value) in bindings {
        let idx = registry
            .index_of(name)
            .ok_or_else(|| Error::Usage(alloc::format!("unknown parameter `{name}`")))?;
        out = out.substitute(idx, value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_potential, rat_int};
    use crate::spectral::{BoundState, PolyValue};
    use num_traits::Zero;

    fn solve(src: &str, bind: &[(&str, i64)], sign: BranchSign, s: usize) -> CaseOutcome {
        let (v, reg) = parse_potential(src).unwrap();
        let bindings: Vec<(String, Rational)> = bind
            .iter()
            .map(|(n, x)| (n.to_string(), rat_int(*x)))
            .collect();
        let v = bind_parameters(&v, &reg, &bindings).unwrap();
        let n = v.degree().unwrap() / 2;
        solve_case(&v, n, sign, s, &SolveConfig::default()).unwrap()
    }

    #[test]
    fn quartic_plus_s1_full_case() {
        let out = solve("x^4+4*x^3+2*x^2-mu*x", &[("mu", 0)], BranchSign::Plus, 1);
        let sp = out.spectral.unwrap();
        assert_eq!(sp.verdict, Verdict::Integrable);
        assert_eq!(
            sp.t_poly.as_ref().unwrap().render(),
            "lambda^2 + 10*lambda + 17"
        );
        assert_eq!(sp.eigenpairs.len(), 2);
        // lambda = -5 + 2 sqrt 2 gives P = x + 1 + sqrt 2
        let pair = &sp.eigenpairs[1];
        assert_eq!(pair.lambda.value.render_exact().unwrap(), "-5 + 2*sqrt(2)");
        match &pair.p {
            PolyValue::Exact(c) => {
                assert_eq!(c[0].render(), "1 + sqrt(2)");
                assert_eq!(c[1].render(), "1");
            }
            _ => panic!("expected exact polynomial"),
        }
        assert_eq!(pair.bound_state, BoundState::NotBound);
    }

    #[test]
    fn sextic_case1_s2_exact_surds() {
        let out = solve("x^6-7*x^2", &[], BranchSign::Minus, 2);
        let sp = out.spectral.unwrap();
        assert_eq!(sp.t_poly.as_ref().unwrap().render(), "lambda^2 - 8");
        assert_eq!(sp.eigenpairs.len(), 2);
        let pair = &sp.eigenpairs[0];
        assert_eq!(pair.lambda.value.render_exact().unwrap(), "-2*sqrt(2)");
        assert_eq!(pair.p.render(50), "x^2 + 1/2*sqrt(2)");
        // minus branch, n = 3 odd: bound states
        assert_eq!(pair.bound_state, BoundState::Bound);
        assert_eq!(pair.residual, Rational::zero());
    }

    #[test]
    fn octic_not_integrable_cases() {
        for s in [2usize, 3, 4] {
            let out = solve(
                "x^8+(2*delta+4)*x^4+mu*x^3+delta^2+4*delta+4",
                &[],
                BranchSign::Plus,
                s,
            );
            let sp = out.spectral.unwrap();
            assert_eq!(sp.verdict, Verdict::NotIntegrable, "octic s={s}");
            assert!(out.basis.unwrap().is_unit_ideal());
        }
    }

    #[test]
    fn harmonic_minus_branch() {
        let out = solve("x^2", &[], BranchSign::Minus, 4);
        let sp = out.spectral.unwrap();
        assert_eq!(sp.t_poly.as_ref().unwrap().render(), "lambda - 9");
        assert_eq!(sp.eigenpairs.len(), 1);
        let pair = &sp.eigenpairs[0];
        // monic Hermite: x^4 - 3x^2 + 3/4
        assert_eq!(pair.p.render(50), "x^4 - 3*x^2 + 3/4");
        assert_eq!(pair.bound_state, BoundState::Bound);
    }

    #[test]
    fn quartic_numeric_eigenpairs_verify() {
        // s = 2, mu = -2: cubic spectral polynomial, certified numeric pairs
        let out = solve("x^4+4*x^3+2*x^2-mu*x", &[("mu", -2)], BranchSign::Plus, 2);
        let sp = out.spectral.unwrap();
        assert_eq!(
            sp.t_poly.as_ref().unwrap().render(),
            "lambda^3 + 21*lambda^2 + 115*lambda + 135"
        );
        assert_eq!(sp.eigenpairs.len(), 3);
        for pair in &sp.eigenpairs {
            assert!(pair.residual < SolveConfig::default().tolerance);
            assert!(pair.p.is_monic());
        }
    }

    #[test]
    fn quasi_solvable_pure_sextic() {
        // V = x^6 + 3x^2 has algebraic spectrum {0}: the plus branch at
        // s = 0 carries psi = e^{x^4/4} with lambda = 0
        let out = solve("x^6+3*x^2", &[], BranchSign::Plus, 0);
        let sp = out.spectral.unwrap();
        assert_eq!(sp.t_poly.as_ref().unwrap().render(), "lambda");
        assert_eq!(sp.eigenpairs.len(), 1);
        let pair = &sp.eigenpairs[0];
        assert_eq!(pair.lambda.value.render_exact().unwrap(), "0");
        assert_eq!(pair.p.render(50), "1");
        assert_eq!(pair.f.render(), "1/4*x^4");
        assert_eq!(pair.bound_state, BoundState::NotBound);
        // while s >= 1 on the same branch is excluded by quantization
        let out = solve("x^6+3*x^2", &[], BranchSign::Plus, 1);
        assert!(out.quant_unsatisfiable);
        assert_eq!(out.spectral.unwrap().verdict, Verdict::NotIntegrable);
    }

    #[test]
    fn decatic_minus_s1_pins_parameters() {
        let out = solve(
            "x^10-x^8+x^6+delta*x^4+epsilon*x^2",
            &[],
            BranchSign::Minus,
            1,
        );
        let sp = out.spectral.unwrap();
        assert_eq!(sp.verdict, Verdict::Integrable);
        let pins: Vec<String> = sp
            .pinned_params
            .iter()
            .map(|(n, r)| alloc::format!("{n}={r}"))
            .collect();
        assert_eq!(pins, vec!["delta=-59/8", "epsilon=169/64"]);
        assert_eq!(sp.t_poly.as_ref().unwrap().render(), "8*lambda - 9");
        assert_eq!(sp.eigenpairs.len(), 1);
        let pair = &sp.eigenpairs[0];
        assert_eq!(pair.p.render(50), "x");
        assert_eq!(pair.bound_state, BoundState::Bound);
    }
}
