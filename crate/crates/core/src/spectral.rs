//! Spectral stage: split the elimination ideal into spectral polynomial and
//! parameter constraints, compute the algebraic spectrum, back-substitute
//! the polynomial factor, verify every eigenpair symbolically, and classify
//! bound states.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Block, Monomial, MultiPoly, Rational, VarRegistry, XPoly};
use crate::characterize::{AuxiliaryOde, BranchSign};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, GroebnerBasis};
use crate::numeric::{decimal_string, eval_crat, sqrt_decimal, CRat};
use crate::scalar::{sqrt_decompose, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Liouvillian solutions exist on the constraint variety (Borel group).
    Integrable,
    /// Unit ideal: no common zero, Galois group `SL(2, C)` for this case.
    NotIntegrable,
    /// No constraint on the eigenvalue (degree <= 2 degeneracies).
    Unconstrained,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Integrable => "integrable",
            Verdict::NotIntegrable => "not_integrable",
            Verdict::Unconstrained => "unconstrained",
        }
    }
}

/// An eigenvalue: exact closed form when available, always with a decimal
/// approximation and a certified residual bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: LambdaValue,
    /// Decimal rendering at report precision.
    pub approx: String,
    /// Exact bound on `|T(approx)| / ||T||_1`; zero for exact roots.
    pub residual_bound: Rational,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaValue {
    Exact(Scalar),
    /// Certified numeric root as an exact rational approximation.
    Numeric(CRat),
}

impl LambdaValue {
    pub fn is_exact(&self) -> bool {
        matches!(self, LambdaValue::Exact(_))
    }

    pub fn is_real(&self) -> bool {
        match self {
            LambdaValue::Exact(s) => s.is_real(),
            LambdaValue::Numeric(z) => z.is_real(),
        }
    }

    /// Realness up to a certification threshold: refined real roots carry
    /// imaginary dust far below the certified digits.
    pub fn is_real_within(&self, eps: &Rational) -> bool {
        match self {
            LambdaValue::Exact(s) => s.is_real(),
            LambdaValue::Numeric(z) => z.im.abs() <= *eps,
        }
    }

    /// Rational approximation of the real and imaginary parts, used for
    /// deterministic ordering and display.
    pub fn approx_parts(&self, digits: u32) -> Result<(Rational, Rational)> {
        match self {
            LambdaValue::Numeric(z) => Ok((z.re.clone(), z.im.clone())),
            LambdaValue::Exact(Scalar::Rat(r)) => Ok((r.clone(), Rational::zero())),
            LambdaValue::Exact(Scalar::Surd { a, b, c }) => {
                let root = sqrt_decimal(&c.abs(), digits + 10)?;
                if c.is_negative() {
                    Ok((a.clone(), b * root))
                } else {
                    Ok((a + b * root, Rational::zero()))
                }
            }
        }
    }

    pub fn render_exact(&self) -> Option<String> {
        match self {
            LambdaValue::Exact(s) => Some(s.render()),
            LambdaValue::Numeric(_) => None,
        }
    }
}

/// The monic polynomial factor of an eigenfunction, exact or certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyValue {
    /// Ascending coefficients in `Q(sqrt c)`; the leading entry is one.
    Exact(Vec<Scalar>),
    /// Ascending complex-rational coefficients.
    Numeric(Vec<CRat>),
}

impl PolyValue {
    pub fn degree(&self) -> usize {
        match self {
            PolyValue::Exact(v) => v.len().saturating_sub(1),
            PolyValue::Numeric(v) => v.len().saturating_sub(1),
        }
    }

    pub fn is_monic(&self) -> bool {
        match self {
            PolyValue::Exact(v) => matches!(v.last(), Some(c) if *c == Scalar::one()),
            PolyValue::Numeric(v) => {
                matches!(v.last(), Some(c) if c.is_real() && c.re.is_one())
            }
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            PolyValue::Exact(v) => v.iter().all(Scalar::is_real),
            PolyValue::Numeric(v) => v.iter().all(CRat::is_real),
        }
    }

    pub fn is_real_within(&self, eps: &Rational) -> bool {
        match self {
            PolyValue::Exact(v) => v.iter().all(Scalar::is_real),
            PolyValue::Numeric(v) => v.iter().all(|c| c.im.abs() <= *eps),
        }
    }

    pub fn render(&self, digits: u32) -> String {
        match self {
            PolyValue::Exact(v) => render_poly_text(v.len(), |k| {
                let c = &v[k];
                if c.is_zero() {
                    None
                } else {
                    Some((c.render(), is_simple_scalar(c)))
                }
            }),
            PolyValue::Numeric(v) => render_poly_text(v.len(), |k| {
                let c = &v[k];
                if c.is_zero() {
                    None
                } else if c.is_real() {
                    Some((decimal_string(&c.re, digits), true))
                } else {
                    let sign = if c.im.is_negative() { "-" } else { "+" };
                    Some((
                        format!(
                            "{} {} {}*i",
                            decimal_string(&c.re, digits),
                            sign,
                            decimal_string(&c.im.abs(), digits)
                        ),
                        false,
                    ))
                }
            }),
        }
    }
}

fn is_simple_scalar(c: &Scalar) -> bool {
    match c {
        Scalar::Rat(_) => true,
        Scalar::Surd { a, .. } => a.is_zero(),
    }
}

/// Shared rendering for `sum coeff_k x^k` given a per-degree renderer that
/// returns `(text, is_atomic)`.
fn render_poly_text(len: usize, coeff: impl Fn(usize) -> Option<(String, bool)>) -> String {
    if len == 0 {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for k in (0..len).rev() {
        let Some((text, atomic)) = coeff(k) else {
            continue;
        };
        let xpart = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        let term = if xpart.is_empty() {
            if atomic {
                text
            } else {
                format!("({text})")
            }
        } else if text == "1" {
            xpart
        } else if text == "-1" {
            format!("-{xpart}")
        } else if atomic {
            format!("{text}*{xpart}")
        } else {
            format!("({text})*{xpart}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(term);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundState {
    Bound,
    NotBound,
    Indeterminate,
}

impl BoundState {
    pub fn label(&self) -> &'static str {
        match self {
            BoundState::Bound => "bound",
            BoundState::NotBound => "not_bound",
            BoundState::Indeterminate => "indeterminate",
        }
    }
}

/// A fully assembled eigenpair.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub lambda: Eigenvalue,
    pub p: PolyValue,
    pub sign: BranchSign,
    /// The exponent `f` with parameters substituted; rational coefficients.
    pub f: XPoly,
    pub bound_state: BoundState,
    /// Certified relative residual of the verification; zero for exact pairs.
    pub residual: Rational,
}

/// Everything the spectral stage extracts from one case.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub verdict: Verdict,
    /// λ-bearing elements of the elimination ideal in `{lambda} ∪ params`.
    pub lambda_constraints: Vec<MultiPoly>,
    /// λ-free elements (parameter constraints such as `M_s`).
    pub param_constraints: Vec<MultiPoly>,
    /// Parameters resolved to exact rationals by linear constraints.
    pub pinned_params: Vec<(String, Rational)>,
    /// Parameters not constrained at all by this case.
    pub free_params: Vec<String>,
    /// The univariate spectral polynomial when parameters resolve.
    pub t_poly: Option<MultiPoly>,
    /// Symbolic ansatz coefficients `p_0 .. p_{s-1}` when the basis is
    /// triangular with rational leading coefficients.
    pub symbolic_p: Option<Vec<MultiPoly>>,
    pub eigenvalues: Vec<Eigenvalue>,
    pub eigenpairs: Vec<Eigenpair>,
}

/// Split a reduced basis into verdict, spectral polynomial material and
/// parameter constraints, and resolve linearly pinned parameters.
pub fn spectral_extract(
    basis: &GroebnerBasis,
    registry: &Arc<VarRegistry>,
    s: usize,
) -> Result<SpectralResult> {
    let mut out = SpectralResult {
        verdict: Verdict::Integrable,
        lambda_constraints: Vec::new(),
        param_constraints: Vec::new(),
        pinned_params: Vec::new(),
        free_params: Vec::new(),
        t_poly: None,
        symbolic_p: None,
        eigenvalues: Vec::new(),
        eigenpairs: Vec::new(),
    };
    if basis.is_unit_ideal() {
        out.verdict = Verdict::NotIntegrable;
        return Ok(out);
    }
    if basis.is_zero_ideal() {
        out.verdict = Verdict::Unconstrained;
        out.free_params = registry
            .indices_of_block(Block::Parameter)
            .map(|i| registry.name(i).to_string())
            .collect();
        return Ok(out);
    }

    let lambda_idx = registry
        .lambda_index()
        .ok_or_else(|| Error::Usage("registry has no eigenvalue variable".to_string()))?;
    let elim = eliminate(basis, &[Block::Eigenvalue, Block::Parameter], registry)?;
    for e in elim {
        if e.uses_var(lambda_idx) {
            out.lambda_constraints.push(e);
        } else {
            out.param_constraints.push(e);
        }
    }
    if out.lambda_constraints.is_empty() {
        out.verdict = Verdict::Unconstrained;
    }

    // resolve parameters pinned by linear single-variable constraints
    let mut remaining = out.param_constraints.clone();
    let mut pinned: BTreeMap<usize, Rational> = BTreeMap::new();
    loop {
        let mut progressed = false;
        let mut next: Vec<MultiPoly> = Vec::new();
        for c in remaining.drain(..) {
            let mut c2 = c.clone();
            for (&v, value) in &pinned {
                c2 = c2.substitute(v, value);
            }
            if c2.is_zero() {
                progressed = true;
                continue;
            }
            if let Some(k) = c2.constant_value() {
                if !k.is_zero() {
                    return Err(Error::Internal(
                        "parameter constraints became inconsistent after pinning".to_string(),
                    ));
                }
            }
            let vars: Vec<usize> = c2.used_vars().into_iter().collect();
            match single_point_pin(&c2, &vars, registry.len()) {
                Some((v, r)) => {
                    pinned.insert(v, r);
                    progressed = true;
                }
                None => next.push(c2),
            }
        }
        remaining = next;
        if !progressed {
            break;
        }
    }
    out.pinned_params = pinned
        .iter()
        .map(|(&v, r)| (registry.name(v).to_string(), r.clone()))
        .collect();

    // free parameters: neither pinned nor restricted by a lambda-free
    // constraint (a parameter the eigenvalue merely depends on stays free)
    let mut constrained: alloc::collections::BTreeSet<usize> = pinned.keys().copied().collect();
    for e in out.param_constraints.iter() {
        constrained.extend(e.used_vars());
    }
    out.free_params = registry
        .indices_of_block(Block::Parameter)
        .filter(|i| !constrained.contains(i))
        .map(|i| registry.name(i).to_string())
        .collect();

    out.symbolic_p = solve_symbolic(basis, registry, s);
    Ok(out)
}

/// A univariate constraint pins its variable when the whole root set is one
/// rational point, i.e. the polynomial is a rational multiple of
/// `(v - r)^d`. Non-radical case ideals produce exactly this shape.
fn single_point_pin(
    c: &MultiPoly,
    vars: &[usize],
    registry_len: usize,
) -> Option<(usize, Rational)> {
    if vars.len() != 1 {
        return None;
    }
    let v = vars[0];
    let d = c.degree_in(v);
    if d == 0 {
        return None;
    }
    let top_exps = {
        let mut e = vec![0u32; registry_len];
        e[v] = d;
        Monomial::from_exponents(e)
    };
    let lead = c.coefficient(&top_exps);
    if lead.is_zero() {
        return None;
    }
    // the only candidate for a d-fold root: -a_{d-1} / (d * a_d)
    let r = if d == 1 {
        -c.coefficient(&Monomial::unit(registry_len)) / &lead
    } else {
        let sub_exps = {
            let mut e = vec![0u32; registry_len];
            e[v] = d - 1;
            Monomial::from_exponents(e)
        };
        -c.coefficient(&sub_exps) / (&lead * Rational::from(BigInt::from(d)))
    };
    let reg = c.registry().clone();
    let linear = MultiPoly::var(reg.clone(), v)
        .ok()?
        .checked_sub(&MultiPoly::constant(reg, r.clone()))
        .ok()?;
    let expected = linear.pow(d).scale(&lead);
    (expected == *c).then_some((v, r))
}

/// Triangular symbolic solve: for each ansatz unknown find the basis element
/// with leading term exactly `p_j`, linear with a rational coefficient, and
/// tail free of every other unknown. Returns the coefficients `p_0 ..
/// p_{s-1}` over `Q[lambda, params]`, or `None` when the basis is not of
/// that shape.
fn solve_symbolic(
    basis: &GroebnerBasis,
    registry: &Arc<VarRegistry>,
    s: usize,
) -> Option<Vec<MultiPoly>> {
    let mut out = Vec::with_capacity(s);
    for j in 0..s {
        let pj = registry.ansatz_index(j)?;
        let mut found = None;
        'elems: for e in basis.elements() {
            if e.degree_in(pj) != 1 {
                continue;
            }
            // must be c * p_j + tail with rational c and tail free of unknowns
            let var_mono = Monomial::var(registry.len(), pj);
            let mut coeff = None;
            let mut tail = MultiPoly::zero(registry.clone());
            for (m, c) in e.terms() {
                if m.exponent(pj) == 1 {
                    if *m != var_mono {
                        continue 'elems;
                    }
                    coeff = Some(c.clone());
                } else {
                    for v in m.support() {
                        if registry.block(v) == Block::Ansatz {
                            continue 'elems;
                        }
                    }
                    tail = tail
                        .checked_add(&MultiPoly::from_terms(
                            registry.clone(),
                            [(m.clone(), c.clone())],
                        ))
                        .ok()?;
                }
            }
            if let Some(c) = coeff {
                found = Some(tail.scale(&(-Rational::one() / c)));
                break;
            }
        }
        out.push(found?);
    }
    Some(out)
}

/// Convert a λ-only polynomial to dense ascending coefficients.
pub fn to_univariate(p: &MultiPoly, var: usize) -> Result<Vec<Rational>> {
    let mut coeffs = vec![Rational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(var) as usize;
        for v in m.support() {
            if v != var {
                return Err(Error::Usage(format!(
                    "polynomial is not univariate in variable {var}"
                )));
            }
        }
        coeffs[e] = coeffs[e].clone() + c.clone();
    }
    uni_trim(&mut coeffs);
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// dense univariate helpers over Q
// ---------------------------------------------------------------------------

pub(crate) fn uni_trim(v: &mut Vec<Rational>) {
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn uni_degree(v: &[Rational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn uni_eval(v: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in v.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn uni_derivative(v: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from(BigInt::from(k)))
        .collect();
    uni_trim(&mut out);
    out
}

pub(crate) fn uni_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = uni_degree(den).expect("division by zero polynomial");
    let mut rem = num.to_vec();
    uni_trim(&mut rem);
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
    while let Some(rd) = uni_degree(&rem) {
        if rd < dd {
            break;
        }
        let factor = &rem[rd] / &den[dd];
        let shift = rd - dd;
        quot[shift] = factor.clone();
        for (k, c) in den.iter().enumerate() {
            rem[k + shift] = &rem[k + shift] - &(c * &factor);
        }
        uni_trim(&mut rem);
    }
    uni_trim(&mut quot);
    (quot, rem)
}

pub(crate) fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = uni_degree(&x) {
        let lead = x[d].clone();
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

/// Yun squarefree decomposition: `(factor, multiplicity)` pairs with
/// squarefree factors of positive degree.
pub(crate) fn uni_squarefree(f: &[Rational]) -> Vec<(Vec<Rational>, usize)> {
    let df = uni_derivative(f);
    if df.is_empty() {
        return vec![(f.to_vec(), 1)];
    }
    let a = uni_gcd(f, &df);
    if uni_degree(&a) == Some(0) {
        return vec![(f.to_vec(), 1)];
    }
    let (mut b, _) = uni_divrem(f, &a);
    let (c0, _) = uni_divrem(&df, &a);
    let mut d = sub_poly(&c0, &uni_derivative(&b));
    let mut out = Vec::new();
    let mut i = 1usize;
    while uni_degree(&b).unwrap_or(0) > 0 {
        let ai = uni_gcd(&b, &d);
        if uni_degree(&ai).unwrap_or(0) > 0 {
            out.push((ai.clone(), i));
        }
        let (b2, _) = uni_divrem(&b, &ai);
        let (c2, _) = uni_divrem(&d, &ai);
        b = b2;
        d = sub_poly(&c2, &uni_derivative(&b));
        i += 1;
    }
    out
}

fn sub_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (k, c) in a.iter().enumerate() {
        out[k] = out[k].clone() + c.clone();
    }
    for (k, c) in b.iter().enumerate() {
        out[k] = out[k].clone() - c.clone();
    }
    uni_trim(&mut out);
    out
}

/// Scale to primitive integer coefficients (content removed, leading > 0).
pub(crate) fn uni_primitive(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut den_lcm = BigInt::one();
    for c in v {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * Rational::from(den_lcm.clone())).numer().clone())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in &mut ints {
            *c = &*c / &g;
        }
    }
    if matches!(ints.last(), Some(c) if c.is_negative()) {
        for c in &mut ints {
            *c = -c.clone();
        }
    }
    ints
}

/// Divisors of `|n|` found through trial division (capped). The boolean is
/// false when the factorization may be incomplete, in which case rational
/// root search falls back to numeric reconstruction.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut rest = n.abs();
    let mut complete = true;
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let cap = BigInt::from(1_000_000u32);
    while d <= cap && (&d * &d) <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1u32;
    }
    if rest > BigInt::one() {
        if rest <= BigInt::from(10u64.pow(12)) {
            // remaining cofactor is prime (no factor below 10^6 squared)
            primes.push((rest, 1));
        } else {
            primes.push((rest, 1));
            complete = false;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d0 in &divs {
            let mut q = d0.clone();
            next.push(q.clone());
            for _ in 0..e {
                q = &q * &p;
                next.push(q.clone());
            }
        }
        next.sort();
        next.dedup();
        divs = next;
        if divs.len() > 20_000 {
            return (divs, false);
        }
    }
    (divs, complete)
}

/// All rational roots of a primitive integer polynomial, with the deflated
/// quotient. Roots are found by the rational root theorem over the divisor
/// lattice of the extreme coefficients.
fn rational_roots(prim: &[BigInt]) -> (Vec<Rational>, Vec<Rational>) {
    let mut f: Vec<Rational> = prim.iter().map(|c| Rational::from(c.clone())).collect();
    uni_trim(&mut f);
    let mut roots = Vec::new();
    while let Some(d) = uni_degree(&f) {
        if d == 0 {
            break;
        }
        // x = 0 roots first
        if f[0].is_zero() {
            roots.push(Rational::zero());
            f.remove(0);
            continue;
        }
        let prim_now = uni_primitive(&f);
        let (nums, _) = divisors(&prim_now[0]);
        let (dens, _) = divisors(prim_now.last().unwrap());
        let mut found = None;
        'search: for nu in &nums {
            for de in &dens {
                for sign in [1i64, -1] {
                    let cand = Rational::new(nu * BigInt::from(sign), de.clone());
                    if uni_eval(&f, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                // deflate by (x - r)
                let lin = vec![-r.clone(), Rational::one()];
                let (q, rem) = uni_divrem(&f, &lin);
                debug_assert!(rem.is_empty());
                f = q;
                roots.push(r);
            }
            None => break,
        }
    }
    (roots, f)
}

/// All complex roots of a univariate spectral polynomial with multiplicity.
///
/// Every rational root is returned exactly; so is every root of a remaining
/// factor of degree <= 2 (as a quadratic surd). Higher-degree remainders get
/// certified numeric roots with an exact residual bound.
pub fn roots(t: &[Rational], precision: u32, tolerance: &Rational) -> Result<Vec<Eigenvalue>> {
    let mut t = t.to_vec();
    uni_trim(&mut t);
    let Some(deg) = uni_degree(&t) else {
        return Err(Error::Usage("spectral polynomial is zero".to_string()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let norm1: Rational = t
        .iter()
        .map(|c| c.abs())
        .fold(Rational::zero(), |a, b| a + b);

    let mut out: Vec<Eigenvalue> = Vec::new();
    for (factor, multiplicity) in uni_squarefree(&t) {
        let prim = uni_primitive(&factor);
        let (rationals, rest) = rational_roots(&prim);
        for r in rationals {
            out.push(make_exact_eigenvalue(
                Scalar::Rat(r),
                multiplicity,
                precision,
            )?);
        }
        match uni_degree(&rest) {
            None | Some(0) => {}
            Some(1) => {
                let r = -&rest[0] / &rest[1];
                out.push(make_exact_eigenvalue(
                    Scalar::Rat(r),
                    multiplicity,
                    precision,
                )?);
            }
            Some(2) => {
                let (a, b, c) = (&rest[2], &rest[1], &rest[0]);
                let disc = b * b - Rational::from(BigInt::from(4)) * a * c;
                let (scale, rad) = sqrt_decompose(&disc);
                let half = Rational::new(BigInt::one(), BigInt::from(2)) / a;
                let base = -b * &half;
                if rad.is_one() {
                    for sgn in [1i64, -1] {
                        let r = &base + &scale * &half * Rational::from(BigInt::from(sgn));
                        out.push(make_exact_eigenvalue(
                            Scalar::Rat(r),
                            multiplicity,
                            precision,
                        )?);
                    }
                } else {
                    for sgn in [1i64, -1] {
                        let sc = Scalar::surd(
                            base.clone(),
                            &scale * &half * Rational::from(BigInt::from(sgn)),
                            rad.clone(),
                        );
                        out.push(make_exact_eigenvalue(sc, multiplicity, precision)?);
                    }
                }
            }
            Some(_) => {
                let approx = crate::numeric::aberth_roots(&rest, precision)?;
                for (re, im) in approx {
                    // safety net: reconstruct small rationals missed by the
                    // divisor search and verify exactly
                    let z = CRat { re, im };
                    if let Some(exact) = reconstruct_rational_root(&rest, &z, precision) {
                        out.push(make_exact_eigenvalue(
                            Scalar::Rat(exact),
                            multiplicity,
                            precision,
                        )?);
                        continue;
                    }
                    let residual = eval_crat(&t, &z).norm1() / &norm1;
                    if &residual > tolerance {
                        return Err(Error::Verify(format!(
                            "numeric root failed certification: residual {residual} exceeds tolerance"
                        )));
                    }
                    let approx_str = render_complex_decimal(&z.re, &z.im, precision);
                    out.push(Eigenvalue {
                        value: LambdaValue::Numeric(z),
                        approx: approx_str,
                        residual_bound: residual,
                        multiplicity,
                    });
                }
            }
        }
    }

    // deterministic order: by approximate (re, im)
    let mut keyed: Vec<((Rational, Rational), Eigenvalue)> = Vec::with_capacity(out.len());
    for e in out {
        let key = e.value.approx_parts(precision)?;
        keyed.push((key, e));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let out: Vec<Eigenvalue> = keyed.into_iter().map(|(_, e)| e).collect();

    let count: usize = out.iter().map(|e| e.multiplicity).sum();
    if count != deg {
        return Err(Error::Internal(format!(
            "root count {count} does not match degree {deg}"
        )));
    }
    Ok(out)
}

fn make_exact_eigenvalue(value: Scalar, multiplicity: usize, precision: u32) -> Result<Eigenvalue> {
    let lv = LambdaValue::Exact(value);
    let (re, im) = lv.approx_parts(precision)?;
    Ok(Eigenvalue {
        approx: render_complex_decimal(&re, &im, precision),
        value: lv,
        residual_bound: Rational::zero(),
        multiplicity,
    })
}

fn render_complex_decimal(re: &Rational, im: &Rational, digits: u32) -> String {
    // suppress imaginary dust below the display precision
    let im_txt = decimal_string(im, digits);
    if im.is_zero() || im_txt == "0" {
        return decimal_string(re, digits);
    }
    let sign = if im.is_negative() { "-" } else { "+" };
    format!(
        "{} {} {}*i",
        decimal_string(re, digits),
        sign,
        decimal_string(&im.abs(), digits)
    )
}

/// Continued-fraction reconstruction of a near-rational root, verified by
/// exact substitution.
fn reconstruct_rational_root(f: &[Rational], z: &CRat, precision: u32) -> Option<Rational> {
    let tiny = Rational::new(
        BigInt::one(),
        BigInt::from(10u32).pow(precision.saturating_sub(5)),
    );
    if z.im.abs() > tiny {
        return None;
    }
    let target = &z.re;
    let den_cap = BigInt::from(10u64.pow(12));
    // continued fraction expansion of target
    let mut a = target.clone();
    let (mut h0, mut h1) = (
        BigInt::one(),
        num_integer::Integer::div_floor(a.numer(), a.denom()),
    );
    let (mut k0, mut k1) = (BigInt::zero(), BigInt::one());
    let mut int_part = Rational::from(h1.clone());
    for _ in 0..200 {
        let frac = &a - &int_part;
        let cand = Rational::new(h1.clone(), k1.clone());
        if (&cand - target).abs() <= tiny && uni_eval(f, &cand).is_zero() {
            return Some(cand);
        }
        if frac.is_zero() || k1 > den_cap {
            break;
        }
        a = Rational::one() / frac;
        let q = num_integer::Integer::div_floor(a.numer(), a.denom());
        int_part = Rational::from(q.clone());
        let h2 = &q * &h1 + &h0;
        let k2 = &q * &k1 + &k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

// ---------------------------------------------------------------------------
// generic triangular back-substitution over an exact field
// ---------------------------------------------------------------------------

/// Minimal field interface shared by `Scalar` and `CRat`.
trait FieldLike: Clone {
    fn from_rat(r: &Rational) -> Self;
    fn add_f(&self, o: &Self) -> Result<Self>;
    fn mul_f(&self, o: &Self) -> Result<Self>;
    fn div_f(&self, o: &Self) -> Result<Self>;
    fn is_zero_f(&self) -> bool;
    /// Whether a constant residue is acceptable: exact fields require zero,
    /// numeric approximations allow magnitudes below `slack`.
    fn residue_ok(&self, slack: Option<&Rational>) -> bool;
    /// Both roots of `x^2 + bx + c = 0` when representable, else None.
    fn quadratic_roots(b: &Self, c: &Self) -> Option<(Self, Self)>;
}

impl FieldLike for Scalar {
    fn from_rat(r: &Rational) -> Self {
        Scalar::Rat(r.clone())
    }
    fn add_f(&self, o: &Self) -> Result<Self> {
        self.add(o)
    }
    fn mul_f(&self, o: &Self) -> Result<Self> {
        self.mul(o)
    }
    fn div_f(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
    fn is_zero_f(&self) -> bool {
        self.is_zero()
    }
    fn residue_ok(&self, _slack: Option<&Rational>) -> bool {
        self.is_zero()
    }
    fn quadratic_roots(b: &Self, c: &Self) -> Option<(Self, Self)> {
        // only the all-rational case stays inside one quadratic field
        let (Scalar::Rat(br), Scalar::Rat(cr)) = (b, c) else {
            return None;
        };
        let disc = br * br - Rational::from(BigInt::from(4)) * cr;
        let (scale, rad) = sqrt_decompose(&disc);
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let base = -br * &half;
        if rad.is_one() {
            Some((
                Scalar::Rat(&base + &scale * &half),
                Scalar::Rat(&base - &scale * &half),
            ))
        } else {
            Some((
                Scalar::surd(base.clone(), &scale * &half, rad.clone()),
                Scalar::surd(base, -(&scale * &half), rad),
            ))
        }
    }
}

impl FieldLike for CRat {
    fn from_rat(r: &Rational) -> Self {
        CRat::from_re(r.clone())
    }
    fn add_f(&self, o: &Self) -> Result<Self> {
        Ok(self.add(o))
    }
    fn mul_f(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(o))
    }
    fn div_f(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
    fn is_zero_f(&self) -> bool {
        self.is_zero()
    }
    fn residue_ok(&self, slack: Option<&Rational>) -> bool {
        match slack {
            Some(tol) => &self.norm1() <= tol,
            None => self.is_zero(),
        }
    }
    fn quadratic_roots(_b: &Self, _c: &Self) -> Option<(Self, Self)> {
        None
    }
}

/// Evaluate a polynomial with the given variables assigned, returning the
/// residual support as monomials over the unassigned variables.
fn eval_partial<F: FieldLike>(
    p: &MultiPoly,
    assign: &BTreeMap<usize, F>,
) -> Result<BTreeMap<Monomial, F>> {
    let len = p.registry().len();
    let mut out: BTreeMap<Monomial, F> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut coeff = F::from_rat(c);
        let mut exps = vec![0u32; len];
        for v in m.support() {
            let e = m.exponent(v);
            if let Some(value) = assign.get(&v) {
                for _ in 0..e {
                    coeff = coeff.mul_f(value)?;
                }
            } else {
                exps[v] = e;
            }
        }
        let mono = Monomial::from_exponents(exps);
        let entry = match out.remove(&mono) {
            Some(prev) => prev.add_f(&coeff)?,
            None => coeff,
        };
        if entry.is_zero_f() {
            continue;
        }
        out.insert(mono, entry);
    }
    Ok(out)
}

/// Solve the triangular reduced basis for the ansatz unknowns at a fixed
/// assignment of `lambda` (and already-substituted parameters). Returns all
/// solutions as ascending monic coefficient vectors.
fn triangular_solve<F: FieldLike>(
    basis: &GroebnerBasis,
    registry: &Arc<VarRegistry>,
    s: usize,
    lambda_value: &F,
    slack: Option<&Rational>,
) -> Result<Vec<Vec<F>>> {
    let lambda_idx = registry
        .lambda_index()
        .ok_or_else(|| Error::Usage("no eigenvalue variable".to_string()))?;
    let mut states: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new()];
    states[0].insert(lambda_idx, lambda_value.clone());

    // ascending leading-monomial order = solve low-priority unknowns first
    for element in basis.elements() {
        let mut next_states: Vec<BTreeMap<usize, F>> = Vec::new();
        for assign in states.drain(..) {
            let rest = eval_partial(element, &assign)?;
            if rest.is_empty() {
                next_states.push(assign);
                continue;
            }
            // classify support
            let mut var: Option<usize> = None;
            let mut max_deg = 0u32;
            let mut ok = true;
            for m in rest.keys() {
                for v in m.support() {
                    if var.is_none() {
                        var = Some(v);
                    }
                    if var != Some(v) {
                        ok = false;
                    }
                    max_deg = max_deg.max(m.exponent(v));
                }
            }
            if !ok {
                return Err(Error::Usage(
                    "basis element involves several unknowns after substitution".to_string(),
                ));
            }
            match (var, max_deg) {
                (None, _) => {
                    // constant residue must vanish (up to numeric slack)
                    if rest.values().all(|c| c.residue_ok(slack)) {
                        next_states.push(assign);
                        continue;
                    }
                    return Err(Error::Usage(
                        "inconsistent assignment: constant basis element is nonzero".to_string(),
                    ));
                }
                (Some(v), 1) => {
                    let len = registry.len();
                    let c1 = rest
                        .get(&Monomial::var(len, v))
                        .cloned()
                        .unwrap_or_else(|| F::from_rat(&Rational::zero()));
                    let c0 = rest
                        .get(&Monomial::unit(len))
                        .cloned()
                        .unwrap_or_else(|| F::from_rat(&Rational::zero()));
                    if c1.is_zero_f() {
                        return Err(Error::Internal(
                            "vanishing leading coefficient in triangular solve".to_string(),
                        ));
                    }
                    let minus_one = F::from_rat(&Rational::from(BigInt::from(-1)));
                    let value = c0.div_f(&c1)?.mul_f(&minus_one)?;
                    let mut a2 = assign.clone();
                    a2.insert(v, value);
                    next_states.push(a2);
                }
                (Some(v), 2) => {
                    let len = registry.len();
                    let c2 = rest
                        .get(&Monomial::from_exponents({
                            let mut e = vec![0; len];
                            e[v] = 2;
                            e
                        }))
                        .cloned()
                        .unwrap_or_else(|| F::from_rat(&Rational::zero()));
                    let c1 = rest
                        .get(&Monomial::var(len, v))
                        .cloned()
                        .unwrap_or_else(|| F::from_rat(&Rational::zero()));
                    let c0 = rest
                        .get(&Monomial::unit(len))
                        .cloned()
                        .unwrap_or_else(|| F::from_rat(&Rational::zero()));
                    let b = c1.div_f(&c2)?;
                    let c = c0.div_f(&c2)?;
                    let Some((r1, r2)) = F::quadratic_roots(&b, &c) else {
                        return Err(Error::Usage(
                            "quadratic blocking factor not representable in the working field"
                                .to_string(),
                        ));
                    };
                    for value in [r1, r2] {
                        let mut a2 = assign.clone();
                        a2.insert(v, value);
                        next_states.push(a2);
                    }
                }
                (Some(_), d) => {
                    return Err(Error::Usage(format!(
                        "blocking factor of degree {d} in triangular solve"
                    )));
                }
            }
        }
        states = next_states;
    }

    // assemble monic coefficient vectors
    let mut out = Vec::with_capacity(states.len());
    for assign in states {
        let mut coeffs = Vec::with_capacity(s + 1);
        for j in 0..s {
            let idx = registry.ansatz_index(j).ok_or_else(|| {
                Error::Internal("ansatz unknown missing from registry".to_string())
            })?;
            let v = assign
                .get(&idx)
                .cloned()
                .ok_or_else(|| Error::Usage(format!("unknown p{j} not determined by the basis")))?;
            coeffs.push(v);
        }
        coeffs.push(F::from_rat(&Rational::one()));
        out.push(coeffs);
    }
    Ok(out)
}

/// Back-substitute the triangular basis at one eigenvalue; returns every
/// monic polynomial factor consistent with the assignment.
pub fn back_substitute(
    basis: &GroebnerBasis,
    registry: &Arc<VarRegistry>,
    s: usize,
    lambda: &LambdaValue,
    numeric_slack: Option<&Rational>,
) -> Result<Vec<PolyValue>> {
    match lambda {
        LambdaValue::Exact(sc) => Ok(triangular_solve::<Scalar>(basis, registry, s, sc, None)?
            .into_iter()
            .map(PolyValue::Exact)
            .collect()),
        LambdaValue::Numeric(z) => {
            Ok(
                triangular_solve::<CRat>(basis, registry, s, z, numeric_slack)?
                    .into_iter()
                    .map(PolyValue::Numeric)
                    .collect(),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// Dense λ-coefficient view of an ODE coefficient `A(x) = sum_k a_k(λ) x^k`.
/// Parameters must already be substituted away.
fn ode_lambda_table(a: &XPoly, registry: &Arc<VarRegistry>) -> Result<Vec<Vec<Rational>>> {
    let lambda_idx = registry
        .lambda_index()
        .ok_or_else(|| Error::Usage("no eigenvalue variable".to_string()))?;
    let deg = a.degree().map(|d| d + 1).unwrap_or(0);
    let mut out = Vec::with_capacity(deg);
    for k in 0..deg {
        out.push(to_univariate(&a.coeff(k, registry), lambda_idx)?);
    }
    Ok(out)
}

fn eval_lambda_table<F: FieldLike>(table: &[Vec<Rational>], lambda: &F) -> Result<Vec<F>> {
    let mut out = Vec::with_capacity(table.len());
    for coeffs in table {
        let mut acc = F::from_rat(&Rational::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul_f(lambda)?.add_f(&F::from_rat(c))?;
        }
        out.push(acc);
    }
    Ok(out)
}

fn poly_add<F: FieldLike>(a: &[F], b: &[F]) -> Result<Vec<F>> {
    let mut out: Vec<F> = Vec::with_capacity(a.len().max(b.len()));
    for k in 0..a.len().max(b.len()) {
        let zero = F::from_rat(&Rational::zero());
        let x = a.get(k).unwrap_or(&zero).clone();
        let y = b
            .get(k)
            .cloned()
            .unwrap_or_else(|| F::from_rat(&Rational::zero()));
        out.push(x.add_f(&y)?);
    }
    Ok(out)
}

fn poly_mul<F: FieldLike>(a: &[F], b: &[F]) -> Result<Vec<F>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let zero = F::from_rat(&Rational::zero());
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_f(&x.mul_f(y)?)?;
        }
    }
    Ok(out)
}

fn poly_derivative<F: FieldLike>(a: &[F]) -> Result<Vec<F>> {
    let mut out = Vec::new();
    for (k, c) in a.iter().enumerate().skip(1) {
        out.push(c.mul_f(&F::from_rat(&Rational::from(BigInt::from(k))))?);
    }
    Ok(out)
}

/// The three residual addends `P''`, `A1 P'`, `A0 P` over F.
fn residual_parts<F: FieldLike>(p: &[F], a1: &[F], a0: &[F]) -> Result<(Vec<F>, Vec<F>, Vec<F>)> {
    let dp = poly_derivative(p)?;
    let ddp = poly_derivative(&dp)?;
    let t1 = poly_mul(a1, &dp)?;
    let t0 = poly_mul(a0, p)?;
    Ok((ddp, t1, t0))
}

/// Verify one eigenpair against its auxiliary ODE.
///
/// Exact eigenvalues demand an identically zero residual; certified numeric
/// eigenvalues are checked at the sample points `x ∈ {-2,-1,0,1,2}` against
/// `tolerance` times the term magnitude at that point. Returns the certified
/// relative residual (zero for exact pairs).
pub fn verify_eigenpair(
    ode: &AuxiliaryOde,
    registry: &Arc<VarRegistry>,
    lambda: &LambdaValue,
    p: &PolyValue,
    tolerance: &Rational,
) -> Result<Rational> {
    // a constant factor never touches A1, so free parameters there are fine
    let a1_table = if p.degree() == 0 {
        Vec::new()
    } else {
        ode_lambda_table(&ode.a1, registry)?
    };
    let a0_table = ode_lambda_table(&ode.a0, registry)?;
    match (lambda, p) {
        (LambdaValue::Exact(sc), PolyValue::Exact(coeffs)) => {
            let a1 = eval_lambda_table::<Scalar>(&a1_table, sc)?;
            let a0 = eval_lambda_table::<Scalar>(&a0_table, sc)?;
            let (ddp, t1, t0) = residual_parts(coeffs, &a1, &a0)?;
            let residual = poly_add(&poly_add(&ddp, &t1)?, &t0)?;
            for c in &residual {
                if !c.is_zero_f() {
                    return Err(Error::Verify(format!(
                        "exact residual is nonzero: coefficient {}",
                        c.render()
                    )));
                }
            }
            Ok(Rational::zero())
        }
        (LambdaValue::Numeric(z), PolyValue::Numeric(coeffs)) => {
            let a1 = eval_lambda_table::<CRat>(&a1_table, z)?;
            let a0 = eval_lambda_table::<CRat>(&a0_table, z)?;
            let (ddp, t1, t0) = residual_parts(coeffs, &a1, &a0)?;
            let residual = poly_add(&poly_add(&ddp, &t1)?, &t0)?;
            let mut worst = Rational::zero();
            for x in [-2i64, -1, 0, 1, 2] {
                let xr = CRat::from_re(Rational::from(BigInt::from(x)));
                let value = eval_crat_poly(&residual, &xr);
                // scale: total term magnitude of the three addends at |x|
                let ax = Rational::from(BigInt::from(x.abs()));
                let mut scale = Rational::one();
                for part in [&ddp, &t1, &t0] {
                    let mut xpow = Rational::one();
                    for c in part.iter() {
                        scale += c.norm1() * &xpow;
                        xpow *= &ax;
                    }
                }
                let rel = value.norm1() / scale;
                if rel > worst {
                    worst = rel;
                }
            }
            if &worst > tolerance {
                return Err(Error::Verify(format!(
                    "numeric residual {worst} exceeds tolerance {tolerance}"
                )));
            }
            Ok(worst)
        }
        _ => Err(Error::Usage(
            "eigenvalue and polynomial factor use different representations".to_string(),
        )),
    }
}

fn eval_crat_poly(p: &[CRat], x: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Bound-state classification from the eigenfunction shape `P e^{±f}`.
///
/// The exponent has leading term `x^{n+1}/(n+1)`. On the minus branch with
/// odd `n` (even leading power) the exponential decays in both directions,
/// so real eigendata gives a bound state; every other real combination
/// diverges on at least one side. Non-real data is reported as
/// indeterminate.
pub fn classify_state(
    sign: BranchSign,
    n: usize,
    lambda: &LambdaValue,
    p: &PolyValue,
    f_real: bool,
    realness_eps: &Rational,
) -> BoundState {
    match sign {
        // e^{+f} and, for even n, e^{-f} blow up on at least one side no
        // matter what the lower coefficients are: the leading exponent term
        // x^{n+1}/(n+1) is real either way
        BranchSign::Plus => BoundState::NotBound,
        BranchSign::Minus if n % 2 == 0 => BoundState::NotBound,
        BranchSign::Minus => {
            if lambda.is_real_within(realness_eps) && p.is_real_within(realness_eps) && f_real {
                BoundState::Bound
            } else {
                BoundState::Indeterminate
            }
        }
    }
}
