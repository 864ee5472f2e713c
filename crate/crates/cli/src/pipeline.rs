//! Batch orchestration over the `(s, sign)` grid with per-case timing and a
//! machine-readable run report.

use std::time::Instant;

use serde_json::{json, Value};

use qes_core::{solve_case, Error, Guard, Result, SolveConfig};

use crate::problem::{Binding, PreparedProblem};
use crate::report::{build_report, CaseReport};

/// Process exit classification, worst case wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitClass {
    Ok = 0,
    Usage = 1,
    VerifyFailure = 2,
    Budget = 3,
}

impl ExitClass {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub guard: String,
    pub advisory: Option<String>,
    pub cases: Vec<CaseReport>,
    pub exit: ExitClass,
}

pub fn solve_config(prep: &PreparedProblem, budget_pairs: Option<usize>) -> SolveConfig {
    let mut cfg = SolveConfig {
        tolerance: prep.spec.tolerance.clone(),
        precision: prep.spec.precision,
        ..SolveConfig::default()
    };
    if let Some(pairs) = budget_pairs {
        cfg.groebner.max_pairs = pairs;
    }
    cfg
}

/// Run every `(s, sign)` case of a prepared problem. Budget failures are
/// per-case; verification failures abort the batch (the engine must never
/// emit unverified eigenpairs).
pub fn run_pipeline(prep: &PreparedProblem, cfg: &SolveConfig) -> Result<RunReport> {
    let mut report = RunReport {
        guard: String::new(),
        advisory: None,
        cases: Vec::new(),
        exit: ExitClass::Ok,
    };
    let n = match prep.guard {
        Guard::OddDegree => {
            report.guard = "not_integrable".into();
            report.advisory =
                Some("odd-degree potential: no Liouvillian solutions for any eigenvalue".into());
            return Ok(report);
        }
        Guard::Even { n: 0, .. } => {
            report.guard = "unconstrained".into();
            report.advisory = Some(
                "constant potential: algebraically solvable, every eigenvalue admits Liouvillian solutions".into(),
            );
            return Ok(report);
        }
        Guard::Even {
            n,
            solvable_advisory,
        } => {
            report.guard = "even".into();
            if solvable_advisory {
                report.advisory = Some(
                    "degree-2 potential: algebraically solvable (infinite algebraic spectrum)"
                        .into(),
                );
            }
            n
        }
    };

    for s in 0..=prep.spec.s_max {
        for sign in &prep.spec.signs {
            let start = Instant::now();
            let outcome = solve_case(&prep.potential, n, *sign, s, cfg)?;
            let elapsed = start.elapsed().as_millis() as u64;
            let case = build_report(&outcome, cfg, elapsed)?;
            if case.budget_error.is_some() {
                report.exit = report.exit.max(ExitClass::Budget);
            }
            report.cases.push(case);
        }
    }
    Ok(report)
}

impl RunReport {
    pub fn to_json(&self, prep: &PreparedProblem) -> Value {
        let bindings: Vec<Value> = prep
            .spec
            .bindings
            .iter()
            .map(|(name, b)| match b {
                Binding::Free => json!({"name": name, "value": "free"}),
                Binding::Value(v) => json!({"name": name, "value": v.to_string()}),
            })
            .collect();
        let integrable = self
            .cases
            .iter()
            .filter(|c| c.verdict == "integrable")
            .count();
        let not_integrable = self
            .cases
            .iter()
            .filter(|c| c.verdict == "not_integrable")
            .count();
        let budget_errors = self
            .cases
            .iter()
            .filter(|c| c.budget_error.is_some())
            .count();
        json!({
            "spec": {
                "potential": prep.spec.potential,
                "params": bindings,
                "s_max": prep.spec.s_max,
                "signs": prep.spec.signs.iter().map(|s| s.label()).collect::<Vec<_>>(),
                "tolerance": prep.spec.tolerance.to_string(),
                "precision": prep.spec.precision,
            },
            "guard": self.guard,
            "advisory": self.advisory,
            "cases": self.cases.iter().map(CaseReport::to_json).collect::<Vec<_>>(),
            "summary": {
                "cases": self.cases.len(),
                "integrable": integrable,
                "not_integrable": not_integrable,
                "budget_errors": budget_errors,
            },
        })
    }

    pub fn to_markdown(&self, prep: &PreparedProblem) -> String {
        let mut out = format!("## {}\n\n", prep.spec.potential);
        if let Some(adv) = &self.advisory {
            out.push_str(&format!("> {adv}\n\n"));
        }
        for case in &self.cases {
            out.push_str(&case.to_markdown());
        }
        out
    }

    pub fn to_text(&self, prep: &PreparedProblem) -> String {
        let mut out = format!("potential: {}\n", prep.spec.potential);
        if let Some(adv) = &self.advisory {
            out.push_str(&format!("note: {adv}\n"));
        }
        for case in &self.cases {
            out.push_str(&case.to_text());
        }
        out
    }
}

/// Map an engine error to the documented exit codes.
pub fn exit_class_for(err: &Error) -> ExitClass {
    match err {
        Error::Usage(_) | Error::Parse { .. } => ExitClass::Usage,
        Error::Verify(_) => ExitClass::VerifyFailure,
        Error::Budget(_) => ExitClass::Budget,
        Error::Internal(_) => ExitClass::VerifyFailure,
    }
}
