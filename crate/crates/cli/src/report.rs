//! Case reports: plain-data records with canonical text renderings, JSON
//! serialization that round-trips field by field, and Markdown output.

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use qes_core::{CaseOutcome, Error, MultiPoly, Rational, Result, SolveConfig, XPoly};

/// Render a (typically tiny) exact rational in scientific notation with a
/// few significant digits; the exact value lives only in the engine.
pub fn scientific(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let abs = r.abs();
    // decimal exponent from digit counts, then one correction step
    let mut exp = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    let ten = Rational::from(num_bigint::BigInt::from(10));
    let pow = |e: i64| -> Rational {
        let p = ten.pow(e.unsigned_abs() as i32);
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut mant = &abs * pow(-exp);
    while mant >= ten {
        mant /= &ten;
        exp += 1;
    }
    while mant < Rational::from(num_bigint::BigInt::from(1)) {
        mant *= &ten;
        exp -= 1;
    }
    let scaled = &mant * pow(sig as i64 - 1);
    let digits = scaled.round().numer().to_string();
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueReport {
    pub exact: Option<String>,
    pub approx: String,
    pub residual_bound: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenpairReport {
    pub lambda_exact: Option<String>,
    pub lambda_approx: String,
    pub p: String,
    pub exponent: String,
    pub bound_state: String,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub sign: String,
    pub s: usize,
    pub n: usize,
    pub quantization: String,
    pub quant_satisfiable: bool,
    pub generators: Vec<String>,
    pub basis: Option<Vec<String>>,
    pub budget_error: Option<String>,
    pub verdict: String,
    pub t_poly: Option<String>,
    pub lambda_constraints: Vec<String>,
    pub param_constraints: Vec<String>,
    pub pinned_params: Vec<(String, String)>,
    pub free_params: Vec<String>,
    pub symbolic_p: Option<String>,
    pub eigenvalues: Vec<EigenvalueReport>,
    pub eigenpairs: Vec<EigenpairReport>,
    /// Prospective classification for the whole case from (sign, degree).
    pub bound_state_family: String,
    pub timing_ms: u64,
}

/// Assemble the symbolic monic factor `x^s + sum p_j x^j` for display.
fn render_symbolic_p(outcome: &CaseOutcome, coeffs: &[MultiPoly]) -> Result<String> {
    let reg = outcome.registry.clone();
    let mut parts: Vec<MultiPoly> = coeffs.to_vec();
    parts.push(MultiPoly::one(reg.clone()));
    let mut poly = XPoly::zero();
    for (k, c) in parts.iter().enumerate() {
        let term = XPoly::x_pow(reg.clone(), k).scale_poly(c)?;
        poly = poly.checked_add(&term)?;
    }
    Ok(poly.render())
}

pub fn build_report(
    outcome: &CaseOutcome,
    cfg: &SolveConfig,
    timing_ms: u64,
) -> Result<CaseReport> {
    let display_digits = cfg.precision;
    let verdict = match &outcome.spectral {
        Some(sp) => sp.verdict.label().to_string(),
        None => "budget_exceeded".to_string(),
    };
    let family = match (outcome.sign, outcome.n % 2) {
        (qes_core::BranchSign::Minus, 1) => "bound",
        _ => "not_bound",
    };
    let mut report = CaseReport {
        sign: outcome.sign.label().to_string(),
        s: outcome.s,
        n: outcome.n,
        quantization: outcome.quantization.constraint.render(),
        quant_satisfiable: !outcome.quant_unsatisfiable,
        generators: outcome.generators.iter().map(|g| g.render()).collect(),
        basis: outcome
            .basis
            .as_ref()
            .map(|b| b.elements().iter().map(|e| e.render()).collect()),
        budget_error: outcome.budget_error.clone(),
        verdict,
        t_poly: None,
        lambda_constraints: Vec::new(),
        param_constraints: Vec::new(),
        pinned_params: Vec::new(),
        free_params: Vec::new(),
        symbolic_p: None,
        eigenvalues: Vec::new(),
        eigenpairs: Vec::new(),
        bound_state_family: family.to_string(),
        timing_ms,
    };
    let Some(sp) = &outcome.spectral else {
        return Ok(report);
    };
    report.t_poly = sp.t_poly.as_ref().map(|t| t.render());
    report.lambda_constraints = sp.lambda_constraints.iter().map(|e| e.render()).collect();
    report.param_constraints = sp.param_constraints.iter().map(|e| e.render()).collect();
    report.pinned_params = sp
        .pinned_params
        .iter()
        .map(|(n, r)| (n.clone(), r.to_string()))
        .collect();
    report.free_params = sp.free_params.clone();
    report.symbolic_p = match &sp.symbolic_p {
        Some(coeffs) => Some(render_symbolic_p(outcome, coeffs)?),
        None => None,
    };
    for ev in &sp.eigenvalues {
        report.eigenvalues.push(EigenvalueReport {
            exact: ev.value.render_exact(),
            approx: ev.approx.clone(),
            residual_bound: scientific(&ev.residual_bound, 3),
            multiplicity: ev.multiplicity,
        });
    }
    for pair in &sp.eigenpairs {
        report.eigenpairs.push(EigenpairReport {
            lambda_exact: pair.lambda.value.render_exact(),
            lambda_approx: pair.lambda.approx.clone(),
            p: pair.p.render(display_digits),
            exponent: pair.f.render(),
            bound_state: pair.bound_state.label().to_string(),
            residual: scientific(&pair.residual, 3),
        });
    }
    Ok(report)
}

impl CaseReport {
    pub fn to_json(&self) -> Value {
        json!({
            "sign": self.sign,
            "s": self.s,
            "n": self.n,
            "quantization": self.quantization,
            "quant_satisfiable": self.quant_satisfiable,
            "generators": self.generators,
            "basis": self.basis,
            "budget_error": self.budget_error,
            "verdict": self.verdict,
            "t_poly": self.t_poly,
            "lambda_constraints": self.lambda_constraints,
            "param_constraints": self.param_constraints,
            "pinned_params": self.pinned_params
                .iter()
                .map(|(n, v)| json!({"name": n, "value": v}))
                .collect::<Vec<_>>(),
            "free_params": self.free_params,
            "symbolic_p": self.symbolic_p,
            "eigenvalues": self.eigenvalues.iter().map(|e| json!({
                "exact": e.exact,
                "approx": e.approx,
                "residual_bound": e.residual_bound,
                "multiplicity": e.multiplicity,
            })).collect::<Vec<_>>(),
            "eigenpairs": self.eigenpairs.iter().map(|p| json!({
                "lambda_exact": p.lambda_exact,
                "lambda_approx": p.lambda_approx,
                "p": p.p,
                "exponent": p.exponent,
                "bound_state": p.bound_state,
                "residual": p.residual,
            })).collect::<Vec<_>>(),
            "bound_state_family": self.bound_state_family,
            "timing_ms": self.timing_ms,
        })
    }

    pub fn from_json(v: &Value) -> Result<CaseReport> {
        let obj = v.as_object().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "case is not an object".into(),
        })?;
        let get_str = |o: &Map<String, Value>, key: &str| -> Result<String> {
            o.get(key)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("missing `{key}`"),
                })
        };
        let get_opt_str = |o: &Map<String, Value>, key: &str| {
            o.get(key).and_then(Value::as_str).map(str::to_string)
        };
        let get_vec = |o: &Map<String, Value>, key: &str| -> Vec<String> {
            o.get(key)
                .and_then(Value::as_array)
                .map(|a| {
                    a.iter()
                        .filter_map(Value::as_str)
                        .map(str::to_string)
                        .collect()
                })
                .unwrap_or_default()
        };
        let mut report = CaseReport {
            sign: get_str(obj, "sign")?,
            s: obj.get("s").and_then(Value::as_u64).unwrap_or(0) as usize,
            n: obj.get("n").and_then(Value::as_u64).unwrap_or(0) as usize,
            quantization: get_str(obj, "quantization")?,
            quant_satisfiable: obj
                .get("quant_satisfiable")
                .and_then(Value::as_bool)
                .unwrap_or(true),
            generators: get_vec(obj, "generators"),
            basis: obj.get("basis").and_then(|b| {
                if b.is_null() {
                    None
                } else {
                    b.as_array().map(|a| {
                        a.iter()
                            .filter_map(Value::as_str)
                            .map(str::to_string)
                            .collect()
                    })
                }
            }),
            budget_error: get_opt_str(obj, "budget_error"),
            verdict: get_str(obj, "verdict")?,
            t_poly: get_opt_str(obj, "t_poly"),
            lambda_constraints: get_vec(obj, "lambda_constraints"),
            param_constraints: get_vec(obj, "param_constraints"),
            pinned_params: obj
                .get("pinned_params")
                .and_then(Value::as_array)
                .map(|a| {
                    a.iter()
                        .filter_map(|e| {
                            Some((
                                e.get("name")?.as_str()?.to_string(),
                                e.get("value")?.as_str()?.to_string(),
                            ))
                        })
                        .collect()
                })
                .unwrap_or_default(),
            free_params: get_vec(obj, "free_params"),
            symbolic_p: get_opt_str(obj, "symbolic_p"),
            eigenvalues: Vec::new(),
            eigenpairs: Vec::new(),
            bound_state_family: get_str(obj, "bound_state_family")?,
            timing_ms: obj.get("timing_ms").and_then(Value::as_u64).unwrap_or(0),
        };
        if let Some(list) = obj.get("eigenvalues").and_then(Value::as_array) {
            for e in list {
                let o = e.as_object().ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: "eigenvalue is not an object".into(),
                })?;
                report.eigenvalues.push(EigenvalueReport {
                    exact: get_opt_str(o, "exact"),
                    approx: get_str(o, "approx")?,
                    residual_bound: get_str(o, "residual_bound")?,
                    multiplicity: o.get("multiplicity").and_then(Value::as_u64).unwrap_or(1)
                        as usize,
                });
            }
        }
        if let Some(list) = obj.get("eigenpairs").and_then(Value::as_array) {
            for e in list {
                let o = e.as_object().ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: "eigenpair is not an object".into(),
                })?;
                report.eigenpairs.push(EigenpairReport {
                    lambda_exact: get_opt_str(o, "lambda_exact"),
                    lambda_approx: get_str(o, "lambda_approx")?,
                    p: get_str(o, "p")?,
                    exponent: get_str(o, "exponent")?,
                    bound_state: get_str(o, "bound_state")?,
                    residual: get_str(o, "residual")?,
                });
            }
        }
        Ok(report)
    }

    /// Markdown rendering mirroring the layout of a results table.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "### sign={} s={} — {}\n\n",
            self.sign, self.s, self.verdict
        ));
        if let Some(err) = &self.budget_error {
            out.push_str(&format!("budget error: {err}\n\n"));
            return out;
        }
        out.push_str("| field | value |\n|---|---|\n");
        out.push_str(&format!("| quantization | `{}` |\n", self.quantization));
        if let Some(t) = &self.t_poly {
            out.push_str(&format!("| T(s, lambda) | `{t}` |\n"));
        }
        for c in &self.lambda_constraints {
            out.push_str(&format!("| lambda relation | `{c}` |\n"));
        }
        for c in &self.param_constraints {
            out.push_str(&format!("| parameter constraint | `{c}` |\n"));
        }
        for (name, value) in &self.pinned_params {
            out.push_str(&format!("| {name} | {value} |\n"));
        }
        for name in &self.free_params {
            out.push_str(&format!("| {name} | free (C) |\n"));
        }
        if let Some(p) = &self.symbolic_p {
            out.push_str(&format!("| P_s | `{p}` |\n"));
        }
        out.push('\n');
        if !self.eigenpairs.is_empty() {
            out.push_str("| lambda | P | bound | residual |\n|---|---|---|---|\n");
            for pair in &self.eigenpairs {
                let lam = pair
                    .lambda_exact
                    .clone()
                    .unwrap_or_else(|| pair.lambda_approx.clone());
                out.push_str(&format!(
                    "| `{lam}` | `{}` | {} | {} |\n",
                    pair.p, pair.bound_state, pair.residual
                ));
            }
            out.push('\n');
        }
        out
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "case sign={} s={}: {}\n",
            self.sign, self.s, self.verdict
        ));
        if let Some(err) = &self.budget_error {
            out.push_str(&format!("  budget error: {err}\n"));
            return out;
        }
        out.push_str(&format!("  quantization: {}\n", self.quantization));
        if let Some(basis) = &self.basis {
            out.push_str("  groebner basis:\n");
            for e in basis {
                out.push_str(&format!("    {e}\n"));
            }
        }
        if let Some(t) = &self.t_poly {
            out.push_str(&format!("  T(s, lambda) = {t}\n"));
        }
        for c in &self.lambda_constraints {
            out.push_str(&format!("  lambda relation: {c}\n"));
        }
        for c in &self.param_constraints {
            out.push_str(&format!("  parameter constraint: {c}\n"));
        }
        for (name, value) in &self.pinned_params {
            out.push_str(&format!("  {name} = {value}\n"));
        }
        for name in &self.free_params {
            out.push_str(&format!("  {name} free over C\n"));
        }
        if let Some(p) = &self.symbolic_p {
            out.push_str(&format!("  P_s = {p}\n"));
        }
        let f_sign = if self.sign == "minus" { "-" } else { "" };
        for pair in &self.eigenpairs {
            let lam = pair
                .lambda_exact
                .clone()
                .unwrap_or_else(|| pair.lambda_approx.clone());
            out.push_str(&format!(
                "  eigenpair: lambda = {lam}, psi = ({}) * exp({}({})), {}, residual {}\n",
                pair.p,
                f_sign,
                pair.exponent,
                if pair.bound_state == "bound" {
                    "bound state"
                } else if pair.bound_state == "not_bound" {
                    "not bound"
                } else {
                    "indeterminate"
                },
                pair.residual
            ));
        }
        out
    }
}
