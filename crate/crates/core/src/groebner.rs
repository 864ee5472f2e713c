//! Buchberger engine: multivariate division, S-polynomials, reduced Gröbner
//! bases under the block lex order, and elimination ideals.
//!
//! The reduced basis is canonical for a fixed order, so two runs over
//! permuted generator lists produce byte-identical output. Pair processing
//! uses the coprime-leading-term criterion and the chain criterion; a
//! configurable budget caps the pair queue and per-polynomial term count so
//! adversarial input fails predictably instead of hanging.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::multipoly_canonical_cmp;
use crate::algebra::{Block, Monomial, MonomialOrder, MultiPoly};
use crate::error::{Error, Result};

/// Resource caps for basis computation.
#[derive(Debug, Clone)]
pub struct GroebnerConfig {
    /// Maximum number of critical pairs processed.
    pub max_pairs: usize,
    /// Maximum term count of any intermediate polynomial (also bounds the
    /// step count of a single division).
    pub max_terms: usize,
    /// Maximum bit size of any intermediate coefficient. Lex reductions on
    /// adversarial input can square coefficient sizes step over step; this
    /// turns such runs into a prompt budget error instead of a stall inside
    /// huge-integer gcds.
    pub max_coeff_bits: u64,
    /// Total work budget for one basis computation, in elementary term
    /// operations. The per-dimension caps multiply to an enormous worst
    /// case; this is the knob that actually bounds wall time.
    pub max_work: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: 1_000_000,
            max_terms: 1_000_000,
            max_coeff_bits: 1 << 16,
            max_work: 200_000_000,
        }
    }
}

/// Cumulative work accounting for one basis computation.
struct WorkMeter {
    used: u64,
    cap: u64,
}

impl WorkMeter {
    fn new(cap: u64) -> Self {
        WorkMeter { used: 0, cap }
    }

    fn unbounded() -> Self {
        WorkMeter {
            used: 0,
            cap: u64::MAX,
        }
    }

    fn charge(&mut self, units: u64) -> Result<()> {
        self.used = self.used.saturating_add(units);
        if self.used > self.cap {
            return Err(Error::Budget(format!(
                "total work budget of {} term operations exhausted",
                self.cap
            )));
        }
        Ok(())
    }
}

/// A reduced Gröbner basis: content-normalized elements sorted by leading
/// monomial, no monomial of any element divisible by another's leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    /// The zero ideal: no constraints at all.
    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// The unit ideal `{1}`: the system has no common zero.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Diagnostic dump: header naming the order, one element per line.
    pub fn dump(&self, registry_names: &[&str]) -> String {
        let mut out = String::from("order: lex [");
        let names: Vec<&str> = self
            .order
            .priority()
            .iter()
            .map(|&i| registry_names[i])
            .collect();
        out.push_str(&names.join(" > "));
        out.push_str("]\n");
        for e in &self.elements {
            out.push_str(&e.render());
            out.push('\n');
        }
        out
    }
}

/// Remainder of `f` on division by `G`: no monomial of the result is
/// divisible by any leading term of `G`, and `f - r` lies in the ideal.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let mut meter = WorkMeter::unbounded();
    try_normal_form(f, basis, order, usize::MAX, u64::MAX, &mut meter)
        .expect("unbounded normal form cannot fail")
}

fn try_normal_form(
    f: &MultiPoly,
    basis: &[MultiPoly],
    order: &MonomialOrder,
    max_terms: usize,
    max_coeff_bits: u64,
    work: &mut WorkMeter,
) -> Result<MultiPoly> {
    let registry = f.registry().clone();
    let mut p = f.clone();
    let mut r = MultiPoly::zero(registry);
    let leads: Vec<(&Monomial, &crate::algebra::Rational)> =
        basis.iter().filter_map(|g| g.leading(order)).collect();
    // the cap bounds both breadth (live terms) and depth (reduction steps);
    // lex reduction chains can run away in degree long before term count grows
    let mut steps = 0usize;
    while let Some((pm, pc)) = p.leading(order) {
        let pm = pm.clone();
        let pc = pc.clone();
        let mut reduced = false;
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if gm.divides(&pm) {
                let shift = gm.quotient(&pm);
                let factor = &pc / *gc;
                p.sub_mul_term_assign(&basis[i], &shift, &factor);
                work.charge(basis[i].n_terms() as u64)?;
                reduced = true;
                break;
            }
        }
        if !reduced {
            // move the leading term into the remainder
            p.take_term(&pm);
            r.add_term_assign(pm, pc);
            work.charge(1)?;
        }
        steps += 1;
        if p.n_terms() > max_terms || steps > max_terms {
            return Err(Error::Budget(format!(
                "reduction exceeded the term budget of {max_terms} ({} live terms, {steps} steps)",
                p.n_terms()
            )));
        }
        if let Some((_, c)) = p.leading(order) {
            let bits = c.numer().bits() + c.denom().bits();
            if bits > max_coeff_bits {
                return Err(Error::Budget(format!(
                    "coefficient grew to {bits} bits, over the cap of {max_coeff_bits}"
                )));
            }
        }
    }
    Ok(r)
}

/// `lcm(LT f, LT g)/LT f * f - lcm(LT f, LT g)/LT g * g`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &MonomialOrder) -> Result<MultiPoly> {
    let (fm, fc) = f
        .leading(order)
        .ok_or_else(|| Error::Usage("S-polynomial of the zero polynomial".to_string()))?;
    let (gm, gc) = g
        .leading(order)
        .ok_or_else(|| Error::Usage("S-polynomial of the zero polynomial".to_string()))?;
    let lcm = fm.lcm(gm);
    let fshift = fm.quotient(&lcm);
    let gshift = gm.quotient(&lcm);
    let finv = crate::algebra::Rational::from(num_bigint::BigInt::from(1)) / fc;
    let ginv = crate::algebra::Rational::from(num_bigint::BigInt::from(1)) / gc;
    f.mul_term(&fshift, &finv)
        .checked_sub(&g.mul_term(&gshift, &ginv))
}

/// Critical pair, ordered so that a min-heap pops the normal-strategy
/// choice: smallest lcm degree, then lcm, then indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

fn make_pair(i: usize, j: usize, basis: &[MultiPoly], order: &MonomialOrder) -> Pair {
    let (mi, _) = basis[i].leading(order).unwrap();
    let (mj, _) = basis[j].leading(order).unwrap();
    let lcm = mi.lcm(mj);
    Pair {
        degree: lcm.total_degree(),
        lcm,
        i,
        j,
    }
}

/// Reduced Gröbner basis of the ideal generated by `input`.
///
/// Zero generators are dropped; an all-zero input yields the empty basis for
/// the zero ideal. The unit ideal is detected and returned as `{1}`.
pub fn buchberger_reduced(
    input: &[MultiPoly],
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for f in input {
        if f.is_zero() {
            continue;
        }
        if f.constant_value().is_some() {
            // nonzero constant: the whole ring
            return Ok(unit_basis(f, order));
        }
        basis.push(f.content_normalize(order)?);
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis {
            order: order.clone(),
            elements: Vec::new(),
        });
    }

    // min-heap on (degree, lcm, i, j); the lcm tie-break uses the intrinsic
    // registry lex, which is a selection heuristic only — the reduced result
    // is order-canonical either way
    let mut pairs: alloc::collections::BinaryHeap<core::cmp::Reverse<Pair>> =
        alloc::collections::BinaryHeap::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push(core::cmp::Reverse(make_pair(i, j, &basis, order)));
        }
    }
    let mut processed: alloc::collections::BTreeSet<(usize, usize)> =
        alloc::collections::BTreeSet::new();
    let mut pair_budget = config.max_pairs;
    let mut work = WorkMeter::new(config.max_work);

    while let Some(core::cmp::Reverse(pair)) = pairs.pop() {
        if pair_budget == 0 {
            return Err(Error::Budget(format!(
                "pair budget of {} exhausted with {} pairs outstanding and {} basis elements",
                config.max_pairs,
                pairs.len() + 1,
                basis.len()
            )));
        }
        pair_budget -= 1;
        processed.insert((pair.i, pair.j));

        // Buchberger's first criterion: coprime leading terms
        let (mi, _) = basis[pair.i].leading(order).unwrap();
        let (mj, _) = basis[pair.j].leading(order).unwrap();
        if pair.lcm == mi.mul(mj) {
            continue;
        }
        // chain criterion: some k with LT(g_k) | lcm and both (i,k), (j,k)
        // already handled
        let mut chained = false;
        for (k, g) in basis.iter().enumerate() {
            if k == pair.i || k == pair.j {
                continue;
            }
            let (mk, _) = g.leading(order).unwrap();
            if mk.divides(&pair.lcm) {
                let a = (pair.i.min(k), pair.i.max(k));
                let b = (pair.j.min(k), pair.j.max(k));
                if processed.contains(&a) && processed.contains(&b) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order)?;
        let rem = try_normal_form(
            &s,
            &basis,
            order,
            config.max_terms,
            config.max_coeff_bits,
            &mut work,
        )?;
        if rem.is_zero() {
            continue;
        }
        if rem.constant_value().is_some() {
            return Ok(unit_basis(&rem, order));
        }
        let rem = rem.content_normalize(order)?;
        let new_index = basis.len();
        basis.push(rem);
        for k in 0..new_index {
            pairs.push(core::cmp::Reverse(make_pair(k, new_index, &basis, order)));
        }
    }

    reduce_basis(basis, order, config, &mut work)
}

fn unit_basis(witness: &MultiPoly, order: &MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        order: order.clone(),
        elements: alloc::vec![MultiPoly::one(witness.registry().clone())],
    }
}

/// Minimalize and autoreduce: drop elements whose leading term is divisible
/// by another's, reduce every tail, normalize content, sort ascending by
/// leading monomial.
fn reduce_basis(
    mut basis: Vec<MultiPoly>,
    order: &MonomialOrder,
    config: &GroebnerConfig,
    work: &mut WorkMeter,
) -> Result<GroebnerBasis> {
    // minimal: remove g when some other leading term divides LT(g)
    let mut keep: Vec<bool> = alloc::vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = basis[i].leading(order).unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = basis[j].leading(order).unwrap();
            if mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<MultiPoly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // autoreduce tails (budgeted: tails of pathological lex bases can churn)
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _g)| j != i)
                .map(|(_j, g)| g.clone())
                .collect();
            let reduced = try_normal_form(
                &minimal[i],
                &others,
                order,
                config.max_terms,
                config.max_coeff_bits,
                work,
            )?;
            if reduced.is_zero() {
                minimal.remove(i);
                changed = true;
                break;
            }
            let reduced = reduced.content_normalize(order)?;
            if reduced != minimal[i] {
                minimal[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    minimal.sort_by(|a, b| multipoly_canonical_cmp(a, b, order));
    Ok(GroebnerBasis {
        order: order.clone(),
        elements: minimal,
    })
}

/// Restrict a reduced basis to the elements supported entirely on the given
/// blocks. Under the block lex order this generates the elimination ideal.
///
/// `keep` must be downward closed in priority: eliminating a block is only
/// sound when every higher-priority block is eliminated with it.
pub fn eliminate(
    basis: &GroebnerBasis,
    keep: &[Block],
    registry: &crate::algebra::VarRegistry,
) -> Result<Vec<MultiPoly>> {
    let keeps = |b: Block| keep.contains(&b);
    let order = [Block::Ansatz, Block::Eigenvalue, Block::Parameter];
    let mut seen_kept = false;
    for b in order {
        if keeps(b) {
            seen_kept = true;
        } else if seen_kept {
            return Err(Error::Usage(format!(
                "lex order over this registry cannot eliminate `{}` while keeping a higher block",
                b.label()
            )));
        }
    }
    Ok(basis
        .elements
        .iter()
        .filter(|e| e.used_vars().into_iter().all(|v| keeps(registry.block(v))))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat_int, MultiPoly, VarRegistry};
    use alloc::sync::Arc;
    use alloc::vec;

    fn quartic_s1_system() -> (Arc<VarRegistry>, Vec<MultiPoly>) {
        // {lambda + 7 - 2 p0, (3 + lambda) p0 - 2} over [p0, lambda]
        let base = VarRegistry::base(&[]).unwrap();
        let reg = base.with_ansatz(1).unwrap();
        let p0 = MultiPoly::var_named(&reg, "p0").unwrap();
        let lam = MultiPoly::var_named(&reg, "lambda").unwrap();
        let two = MultiPoly::constant(reg.clone(), rat_int(2));
        let seven = MultiPoly::constant(reg.clone(), rat_int(7));
        let three = MultiPoly::constant(reg.clone(), rat_int(3));
        let g1 = &(&lam + &seven) - &p0.scale(&rat_int(2));
        let g2 = &(&(&three + &lam) * &p0) - &two;
        (reg, vec![g1, g2])
    }

    #[test]
    fn normal_form_examples() {
        let (reg, gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        // self-reduction
        assert!(normal_form(&gens[0], &gens[0..1], &order).is_zero());
        // single-step division: p0 mod {2 p0 - lambda - 7} = (lambda + 7)/2
        let p0 = MultiPoly::var_named(&reg, "p0").unwrap();
        let divisor = gens[0].neg(); // 2 p0 - lambda - 7
        let r = normal_form(&p0, &[divisor], &order);
        assert_eq!(r.render(), "1/2*lambda + 7/2");
    }

    #[test]
    fn s_polynomial_examples() {
        let (reg, gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        assert!(s_polynomial(&gens[0], &gens[0], &order).unwrap().is_zero());

        // sextic fragment: s_polynomial(lambda + 4 p0, lambda p0 + 2)
        // under p0 > lambda gives (lambda^2 - 8)/4 up to scale
        let p0 = MultiPoly::var_named(&reg, "p0").unwrap();
        let lam = MultiPoly::var_named(&reg, "lambda").unwrap();
        let f = &lam + &p0.scale(&rat_int(4));
        let g = &(&lam * &p0) + &MultiPoly::constant(reg.clone(), rat_int(2));
        let s = s_polynomial(&f, &g, &order).unwrap();
        let s = s.content_normalize(&order).unwrap();
        assert_eq!(s.render(), "lambda^2 - 8");
    }

    #[test]
    fn quartic_s1_reduced_basis() {
        let (reg, gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        let gb = buchberger_reduced(&gens, &order, &GroebnerConfig::default()).unwrap();
        let rendered: Vec<_> = gb.elements().iter().map(|e| e.render()).collect();
        assert_eq!(
            rendered,
            vec!["lambda^2 + 10*lambda + 17", "2*p0 - lambda - 7"]
        );
        // ideal membership soundness
        for g in &gens {
            assert!(normal_form(g, gb.elements(), &order).is_zero());
        }
        // member of the ideal reduces to zero
        assert!(normal_form(&gb.elements()[0], gb.elements(), &order).is_zero());
    }

    #[test]
    fn unit_and_zero_ideals() {
        let reg = VarRegistry::base(&[]).unwrap();
        let order = MonomialOrder::lex_identity(reg.len());
        let one = MultiPoly::one(reg.clone());
        let lam = MultiPoly::var_named(&reg, "lambda").unwrap();
        let gb =
            buchberger_reduced(&[one, lam.clone()], &order, &GroebnerConfig::default()).unwrap();
        assert!(gb.is_unit_ideal());
        let rendered: Vec<_> = gb.elements().iter().map(|e| e.render()).collect();
        assert_eq!(rendered, vec!["1"]);

        let zero = MultiPoly::zero(reg.clone());
        let gb = buchberger_reduced(&[zero], &order, &GroebnerConfig::default()).unwrap();
        assert!(gb.is_zero_ideal());
    }

    #[test]
    fn elimination_reads_off_lex_basis() {
        let (reg, gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        let gb = buchberger_reduced(&gens, &order, &GroebnerConfig::default()).unwrap();
        let elim = eliminate(&gb, &[Block::Eigenvalue, Block::Parameter], &reg).unwrap();
        assert_eq!(elim.len(), 1);
        assert_eq!(elim[0].render(), "lambda^2 + 10*lambda + 17");
        // keeping only the ansatz block is not an elimination order
        assert!(eliminate(&gb, &[Block::Ansatz], &reg).is_err());
        // unit ideal eliminates to itself
        let one = MultiPoly::one(reg.clone());
        let gb = buchberger_reduced(&[one], &order, &GroebnerConfig::default()).unwrap();
        let elim = eliminate(&gb, &[Block::Eigenvalue, Block::Parameter], &reg).unwrap();
        assert_eq!(elim.len(), 1);
        assert!(elim[0].is_one());
    }

    #[test]
    fn budget_is_enforced() {
        let (reg, gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        let tiny = GroebnerConfig {
            max_pairs: 0,
            ..GroebnerConfig::default()
        };
        assert!(matches!(
            buchberger_reduced(&gens, &order, &tiny),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn input_permutation_gives_identical_basis() {
        let (reg, mut gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        let a = buchberger_reduced(&gens, &order, &GroebnerConfig::default()).unwrap();
        gens.reverse();
        let b = buchberger_reduced(&gens, &order, &GroebnerConfig::default()).unwrap();
        let names: Vec<&str> = (0..reg.len()).map(|i| reg.name(i)).collect();
        assert_eq!(a.dump(&names), b.dump(&names));
    }

    #[test]
    fn buchberger_criterion_holds_post_hoc() {
        let (reg, gens) = quartic_s1_system();
        let order = MonomialOrder::lex_identity(reg.len());
        let gb = buchberger_reduced(&gens, &order, &GroebnerConfig::default()).unwrap();
        let els = gb.elements();
        for i in 0..els.len() {
            for j in (i + 1)..els.len() {
                let s = s_polynomial(&els[i], &els[j], &order).unwrap();
                assert!(normal_form(&s, els, &order).is_zero());
            }
        }
    }
}
