//! Property tests for the algebra layer and the Buchberger engine.

use std::sync::Arc;

use proptest::prelude::*;

use qes_core::{
    buchberger_reduced, normal_form, s_polynomial, Block, GroebnerConfig, Monomial, MonomialOrder,
    MultiPoly, Rational, Scalar, VarRegistry, XPoly,
};

fn registry3() -> Arc<VarRegistry> {
    VarRegistry::base(&["a", "b"]).unwrap()
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| qes_core::rat(n, d))
}

fn monomial_strategy(nvars: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_deg, nvars).prop_map(Monomial::from_exponents)
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    let reg = registry3();
    prop::collection::vec((monomial_strategy(3, 3), rational_strategy()), 0..5)
        .prop_map(move |terms| MultiPoly::from_terms(reg.clone(), terms))
}

proptest! {
    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        // commutativity
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        // associativity
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        // distributivity
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        // additive inverse
        prop_assert!((&f + &f.neg()).is_zero());
    }

    #[test]
    fn derivative_product_rule(f in poly_strategy(), g in poly_strategy()) {
        let reg = f.registry().clone();
        for var in 0..reg.len() {
            let lhs = (&f * &g).derivative(var).unwrap();
            let rhs = &(&f.derivative(var).unwrap() * &g) + &(&f * &g.derivative(var).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn content_normalize_is_idempotent_and_proportional(f in poly_strategy()) {
        prop_assume!(!f.is_zero());
        let order = MonomialOrder::lex_identity(f.registry().len());
        let g = f.content_normalize(&order).unwrap();
        prop_assert_eq!(g.content_normalize(&order).unwrap(), g.clone());
        // proportional: f * lc(g) == g * lc(f) over the leading coefficients
        let (_, cf) = f.leading(&order).unwrap();
        let (_, cg) = g.leading(&order).unwrap();
        prop_assert_eq!(f.scale(cg), g.scale(cf));
    }

    #[test]
    fn x_coefficients_reassemble(coeffs in prop::collection::vec(poly_strategy(), 0..5)) {
        let reg = registry3();
        let p = XPoly::from_coeffs(coeffs);
        let mut rebuilt = XPoly::zero();
        for (k, c) in p.x_coefficients() {
            let term = XPoly::x_pow(reg.clone(), k).scale_poly(c).unwrap();
            rebuilt = rebuilt.checked_add(&term).unwrap();
        }
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn parser_render_round_trip(coeffs in prop::collection::vec((-9i64..=9, 1i64..=4), 1..5)) {
        // build sum of c_k x^k, render, reparse, compare
        let reg = VarRegistry::base(&[]).unwrap();
        let poly = XPoly::from_coeffs(
            coeffs
                .iter()
                .map(|(n, d)| MultiPoly::constant(reg.clone(), qes_core::rat(*n, *d)))
                .collect(),
        );
        let text = poly.render();
        let (reparsed, _) = qes_core::parse_potential(&text).unwrap();
        prop_assert_eq!(reparsed.render(), text);
    }

    #[test]
    fn surd_field_axioms(
        a in rational_strategy(),
        b in rational_strategy(),
        c in rational_strategy(),
        d in rational_strategy(),
    ) {
        let x = Scalar::surd(a, b, 7u32.into());
        let y = Scalar::surd(c, d, 7u32.into());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        if !y.is_zero() {
            // division inverts multiplication
            let q = x.div(&y).unwrap();
            prop_assert_eq!(q.mul(&y).unwrap(), x.clone());
        }
        // conjugation is a ring homomorphism
        prop_assert_eq!(
            x.mul(&y).unwrap().conjugate(),
            x.conjugate().mul(&y.conjugate()).unwrap()
        );
    }
}

fn small_ideal_strategy() -> impl Strategy<Value = (Arc<VarRegistry>, Vec<MultiPoly>)> {
    let reg = registry3();
    prop::collection::vec(
        prop::collection::vec((monomial_strategy(3, 2), -6i64..=6), 1..4),
        1..4,
    )
    .prop_map(move |gens| {
        let polys = gens
            .into_iter()
            .map(|terms| {
                MultiPoly::from_terms(
                    reg.clone(),
                    terms.into_iter().map(|(m, c)| (m, qes_core::rat_int(c))),
                )
            })
            .collect();
        (reg.clone(), polys)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Every produced basis satisfies the Buchberger criterion, contains the
    /// input ideal, and is independent of generator order.
    #[test]
    fn buchberger_soundness((reg, gens) in small_ideal_strategy()) {
        let order = MonomialOrder::lex_identity(reg.len());
        let cfg = GroebnerConfig::default();
        let gb = buchberger_reduced(&gens, &order, &cfg).unwrap();
        let els = gb.elements();
        for g in &gens {
            prop_assert!(normal_form(g, els, &order).is_zero());
        }
        for i in 0..els.len() {
            for j in (i + 1)..els.len() {
                let s = s_polynomial(&els[i], &els[j], &order).unwrap();
                prop_assert!(normal_form(&s, els, &order).is_zero());
            }
        }
        let mut permuted = gens.clone();
        permuted.reverse();
        let gb2 = buchberger_reduced(&permuted, &order, &cfg).unwrap();
        prop_assert_eq!(gb.elements(), gb2.elements());
    }
}

// Square completion reconstructs random monic even polynomials exactly.
proptest! {
    #[test]
    fn square_completion_reconstructs(
        n in 1usize..=5,
        lower in prop::collection::vec((-9i64..=9, 1i64..=3), 0..8),
    ) {
        let reg = VarRegistry::base(&[]).unwrap();
        let mut coeffs: Vec<MultiPoly> = (0..2 * n)
            .map(|k| {
                lower
                    .get(k)
                    .map(|(p, q)| MultiPoly::constant(reg.clone(), qes_core::rat(*p, *q)))
                    .unwrap_or_else(|| MultiPoly::zero(reg.clone()))
            })
            .collect();
        coeffs.push(MultiPoly::one(reg.clone()));
        let v = XPoly::from_coeffs(coeffs);
        let sf = qes_core::complete_square(&v, n).unwrap();
        prop_assert_eq!(sf.reconstruct(), v);
        prop_assert!(sf.b().degree().map(|d| d < n).unwrap_or(true));
        prop_assert!(sf.c().degree().map(|d| d < n).unwrap_or(true));
    }
}

/// Values are safe to share across threads.
#[test]
fn engine_values_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<MultiPoly>();
    assert_send_sync::<XPoly>();
    assert_send_sync::<Scalar>();
    assert_send_sync::<qes_core::GroebnerBasis>();
    assert_send_sync::<qes_core::CaseOutcome>();
}

/// Elimination keep-sets must respect block priority.
#[test]
fn eliminate_rejects_non_suffix_keeps() {
    let base = VarRegistry::base(&["m"]).unwrap();
    let reg = base.with_ansatz(1).unwrap();
    let order = MonomialOrder::lex_identity(reg.len());
    let p0 = MultiPoly::var_named(&reg, "p0").unwrap();
    let gb = buchberger_reduced(&[p0], &order, &GroebnerConfig::default()).unwrap();
    assert!(qes_core::eliminate(&gb, &[Block::Ansatz, Block::Eigenvalue], &reg).is_err());
    assert!(qes_core::eliminate(&gb, &[Block::Parameter], &reg).is_ok());
}
