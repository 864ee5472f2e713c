//! Built-in regression corpus: the published results tables for the six
//! potential families, reproduced end to end and diffed against stored
//! expectations.
//!
//! Three table entries are known misprints; their stored expectations carry
//! the corrected value (confirmed by the independent linear-system
//! determinant oracle) and reproduce emits an informational flag instead of
//! a failure:
//!   - quartic plus-branch s=0 spectral polynomial (printed `lambda - 1`,
//!     direct substitution of P=1 forces `lambda + 3`),
//!   - sextic case-1 s=6 constant term (printed 880, correct value 2880,
//!     matching the published inline Gröbner basis),
//!   - sextic case-1 s=10 constant term (printed +5184000, correct value
//!     -5184000; the printed polynomial has two non-real eigenvalue pairs,
//!     the corrected one has six real eigenvalues).

use num_traits::Signed;

use qes_core::{solve_case, BranchSign, CaseOutcome, Error, Result, SolveConfig};

use crate::problem::{parse_extended_rational, parse_problem_str, prepare};

pub const QUARTIC: &str = "x^4+4*x^3+2*x^2-mu*x";
pub const OCTIC: &str = "x^8+(2*delta+4)*x^4+mu*x^3+delta^2+4*delta+4";
pub const DECATIC: &str = "x^10-x^8+x^6+delta*x^4+epsilon*x^2";
pub const DODECATIC: &str = "x^12+kappa*x^6+mu*x^5";
pub const TETRADECATIC: &str = "x^14+(2*delta+4)*x^7+mu*x^6+kappa*x^2+delta^2+4*delta+4";

#[derive(Debug, Clone)]
pub struct RowCheck {
    pub label: String,
    pub pass: bool,
    pub detail: String,
    pub flag: Option<String>,
}

#[derive(Debug, Clone)]
pub struct TableResult {
    pub id: String,
    pub rows: Vec<RowCheck>,
}

impl TableResult {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

pub fn known_tables() -> Vec<&'static str> {
    vec![
        "table1", "table2", "table3", "table4", "table5", "table6", "table7", "table8", "table9",
        "table10", "table11", "table12", "table13", "table14", "table15",
    ]
}

/// Run one `(sign, s)` case of a potential with optional rational bindings.
pub fn run_case(
    potential: &str,
    bindings: &[(&str, &str)],
    sign: BranchSign,
    s: usize,
) -> Result<CaseOutcome> {
    let mut text = format!("potential = {potential}\n");
    for (name, value) in bindings {
        text.push_str(&format!("param.{name} = {value}\n"));
    }
    let prep = prepare(parse_problem_str(&text)?)?;
    let n = match prep.guard {
        qes_core::Guard::Even { n, .. } if n >= 1 => n,
        _ => {
            return Err(Error::Usage(
                "corpus potential must have even degree >= 2".into(),
            ))
        }
    };
    solve_case(&prep.potential, n, sign, s, &SolveConfig::default())
}

struct Checker {
    rows: Vec<RowCheck>,
}

impl Checker {
    fn new() -> Self {
        Checker { rows: Vec::new() }
    }

    fn push(&mut self, label: &str, pass: bool, detail: String, flag: Option<&str>) {
        self.rows.push(RowCheck {
            label: label.to_string(),
            pass,
            detail,
            flag: flag.map(str::to_string),
        });
    }

    fn eq(&mut self, label: &str, got: &str, expect: &str, flag: Option<&str>) {
        self.push(
            label,
            got == expect,
            if got == expect {
                format!("`{got}`")
            } else {
                format!("expected `{expect}`, got `{got}`")
            },
            flag,
        );
    }

    fn contains(&mut self, label: &str, haystack: &[String], needle: &str, flag: Option<&str>) {
        let pass = haystack.iter().any(|h| h == needle);
        self.push(
            label,
            pass,
            if pass {
                format!("`{needle}`")
            } else {
                format!("expected `{needle}` among {haystack:?}")
            },
            flag,
        );
    }
}

fn t_poly_of(outcome: &CaseOutcome) -> String {
    outcome
        .spectral
        .as_ref()
        .and_then(|sp| sp.t_poly.as_ref())
        .map(|t| t.render())
        .unwrap_or_else(|| "<absent>".to_string())
}

fn lambda_constraints_of(outcome: &CaseOutcome) -> Vec<String> {
    outcome
        .spectral
        .as_ref()
        .map(|sp| sp.lambda_constraints.iter().map(|e| e.render()).collect())
        .unwrap_or_default()
}

fn param_constraints_of(outcome: &CaseOutcome) -> Vec<String> {
    outcome
        .spectral
        .as_ref()
        .map(|sp| sp.param_constraints.iter().map(|e| e.render()).collect())
        .unwrap_or_default()
}

fn free_params_of(outcome: &CaseOutcome) -> Vec<String> {
    outcome
        .spectral
        .as_ref()
        .map(|sp| sp.free_params.clone())
        .unwrap_or_default()
}

fn eigenpair_summaries(outcome: &CaseOutcome) -> Vec<(String, String)> {
    outcome
        .spectral
        .as_ref()
        .map(|sp| {
            sp.eigenpairs
                .iter()
                .map(|pair| {
                    let lam = pair
                        .lambda
                        .value
                        .render_exact()
                        .unwrap_or_else(|| pair.lambda.approx.clone());
                    (lam, pair.p.render(50))
                })
                .collect()
        })
        .unwrap_or_default()
}

fn verdict_of(outcome: &CaseOutcome) -> &'static str {
    outcome
        .spectral
        .as_ref()
        .map(|sp| sp.verdict.label())
        .unwrap_or("budget_exceeded")
}

// ---------------------------------------------------------------------------
// quartic
// ---------------------------------------------------------------------------

const TABLE1_T: [&str; 6] = [
    "lambda + 3",
    "lambda^2 + 10*lambda + 17",
    "lambda^3 + 21*lambda^2 + 115*lambda + 135",
    "lambda^4 + 36*lambda^3 + 406*lambda^2 + 1572*lambda + 1521",
    "lambda^5 + 55*lambda^4 + 1050*lambda^3 + 8366*lambda^2 + 26613*lambda + 27659",
    "lambda^6 + 78*lambda^5 + 2255*lambda^4 + 30276*lambda^3 + 196015*lambda^2 + 596046*lambda + 777825",
];

const TABLE2_T: [&str; 6] = [
    "lambda - 1",
    "lambda^2 - 6*lambda + 1",
    "lambda^3 - 15*lambda^2 + 43*lambda + 51",
    "lambda^4 - 28*lambda^3 + 214*lambda^2 - 156*lambda - 1615",
    "lambda^5 - 45*lambda^4 + 650*lambda^3 - 2634*lambda^2 - 8027*lambda + 41799",
    "lambda^6 - 66*lambda^5 + 1535*lambda^4 - 13404*lambda^3 + 3343*lambda^2 + 428670*lambda - 984879",
];

const T1_FLAG: &str =
    "published table prints `lambda - 1`; P=1 in the plus-branch ODE forces lambda = -3";

fn quartic_spectral(id: &str, sign: BranchSign) -> Result<TableResult> {
    let expect = if sign == BranchSign::Plus {
        &TABLE1_T
    } else {
        &TABLE2_T
    };
    let mut ck = Checker::new();
    for s in 0..=5usize {
        let out = run_case(QUARTIC, &[], sign, s)?;
        let mu = if sign == BranchSign::Plus {
            2 - 2 * s as i64
        } else {
            6 + 2 * s as i64
        };
        let pinned = out
            .spectral
            .as_ref()
            .map(|sp| sp.pinned_params.clone())
            .unwrap_or_default();
        let mu_ok = pinned
            .iter()
            .any(|(n, v)| n == "mu" && v == &qes_core::rat_int(mu));
        ck.push(
            &format!("s={s} mu"),
            mu_ok,
            format!("mu pinned to {mu}"),
            None,
        );
        let flag = (sign == BranchSign::Plus && s == 0).then_some(T1_FLAG);
        ck.eq(&format!("s={s} T"), &t_poly_of(&out), expect[s], flag);
    }
    Ok(TableResult {
        id: id.to_string(),
        rows: ck.rows,
    })
}

/// Independently computed reference roots (exact bisection, 25+ digits).
const TABLE3_S2: [&str; 3] = [
    "-12.891990404456120536350770673546",
    "-6.495999229654975548050663687678",
    "-1.612010365888903915598565638774",
];
const TABLE4_S2: [&str; 3] = [
    "-0.891990404456120536350770673546",
    "5.504000770345024451949336312321",
    "10.387989634111096084401434361225",
];

fn quartic_lambda(id: &str, sign: BranchSign) -> Result<TableResult> {
    let mut ck = Checker::new();
    let (s0_lambda, s0_flag) = if sign == BranchSign::Plus {
        (
            "-3",
            Some("follows the corrected s=0 spectral polynomial `lambda + 3`"),
        )
    } else {
        ("1", None)
    };

    let mu_for = |s: usize| {
        if sign == BranchSign::Plus {
            (2 - 2 * s as i64).to_string()
        } else {
            (6 + 2 * s as i64).to_string()
        }
    };

    // s = 0: a single rational eigenvalue
    let out = run_case(QUARTIC, &[("mu", &mu_for(0))], sign, 0)?;
    let pairs = eigenpair_summaries(&out);
    ck.push(
        "s=0 spectrum",
        pairs.len() == 1 && pairs[0].0 == s0_lambda && pairs[0].1 == "1",
        format!("{pairs:?}"),
        s0_flag,
    );

    // s = 1: conjugate surd pair
    let out = run_case(QUARTIC, &[("mu", &mu_for(1))], sign, 1)?;
    let pairs = eigenpair_summaries(&out);
    let expect: Vec<&str> = if sign == BranchSign::Plus {
        vec!["-5 - 2*sqrt(2)", "-5 + 2*sqrt(2)"]
    } else {
        vec!["3 - 2*sqrt(2)", "3 + 2*sqrt(2)"]
    };
    ck.push(
        "s=1 spectrum",
        pairs.len() == 2 && pairs[0].0 == expect[0] && pairs[1].0 == expect[1],
        format!("{pairs:?}"),
        None,
    );

    // s = 2: three real roots of an irreducible cubic, certified numeric
    let out = run_case(QUARTIC, &[("mu", &mu_for(2))], sign, 2)?;
    let sp = out.spectral.as_ref().unwrap();
    let refs = if sign == BranchSign::Plus {
        &TABLE3_S2
    } else {
        &TABLE4_S2
    };
    let tol = parse_extended_rational("1e-20").unwrap();
    let mut all_ok = sp.eigenvalues.len() == 3;
    for (ev, expect) in sp.eigenvalues.iter().zip(refs.iter()) {
        let (re, im) = ev.value.approx_parts(50)?;
        let want = parse_extended_rational(expect).unwrap();
        if (re - want).abs() > tol || im.abs() > tol {
            all_ok = false;
        }
    }
    ck.push(
        "s=2 spectrum",
        all_ok,
        format!("3 certified real roots vs bisection references {refs:?}"),
        None,
    );
    for pair in &sp.eigenpairs {
        if pair.residual > parse_extended_rational("1e-10").unwrap() {
            ck.push(
                "s=2 residual",
                false,
                "residual above tolerance".into(),
                None,
            );
        }
    }
    Ok(TableResult {
        id: id.to_string(),
        rows: ck.rows,
    })
}

// ---------------------------------------------------------------------------
// sextic
// ---------------------------------------------------------------------------

const TABLE5_T: [(usize, i64, &str, Option<&str>); 6] = [
    (0, 1, "lambda", None),
    (2, 2, "lambda^2 - 8", None),
    (4, 3, "lambda^3 - 64*lambda", None),
    (
        6,
        4,
        "lambda^4 - 240*lambda^2 + 2880",
        Some("published table prints constant 880; the published inline basis and the determinant oracle give 2880"),
    ),
    (8, 5, "lambda^5 - 640*lambda^3 + 47104*lambda", None),
    (
        10,
        6,
        "lambda^6 - 1400*lambda^4 + 331456*lambda^2 - 5184000",
        Some("published table prints +5184000; the coefficient recurrence and determinant oracle give -5184000"),
    ),
];

const TABLE7_T: [(usize, i64, &str); 5] = [
    (1, 1, "lambda"),
    (3, 2, "lambda^2 - 24"),
    (5, 3, "lambda^3 - 128*lambda"),
    (7, 4, "lambda^4 - 400*lambda^2 + 12096"),
    (9, 5, "lambda^5 - 960*lambda^3 + 129024*lambda"),
];

/// Case-1 sextic: `x^6 - (4J - 1) x^2` with `J = (s+2)/2`.
pub fn sextic_case1_potential(j: i64) -> String {
    format!("x^6-{}*x^2", 4 * j - 1)
}

/// Case-2 sextic: `x^6 - (4J + 1) x^2` with `J = (s+1)/2`.
pub fn sextic_case2_potential(j: i64) -> String {
    format!("x^6-{}*x^2", 4 * j + 1)
}

fn table5() -> Result<TableResult> {
    let mut ck = Checker::new();
    for (s, j, expect, flag) in TABLE5_T {
        let out = run_case(&sextic_case1_potential(j), &[], BranchSign::Minus, s)?;
        ck.eq(&format!("s={s} T"), &t_poly_of(&out), expect, flag);
    }
    Ok(TableResult {
        id: "table5".into(),
        rows: ck.rows,
    })
}

fn table6() -> Result<TableResult> {
    let mut ck = Checker::new();
    let expect: [(usize, i64, Vec<(&str, &str)>); 3] = [
        (0, 1, vec![("0", "1")]),
        (
            2,
            2,
            vec![
                ("-2*sqrt(2)", "x^2 + 1/2*sqrt(2)"),
                ("2*sqrt(2)", "x^2 - 1/2*sqrt(2)"),
            ],
        ),
        (
            4,
            3,
            vec![
                ("-8", "x^4 + 2*x^2 + 1/2"),
                ("0", "x^4 - 3/2"),
                ("8", "x^4 - 2*x^2 + 1/2"),
            ],
        ),
    ];
    for (s, j, rows) in expect {
        let out = run_case(&sextic_case1_potential(j), &[], BranchSign::Minus, s)?;
        let pairs = eigenpair_summaries(&out);
        let want: Vec<(String, String)> = rows
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        ck.push(
            &format!("s={s} eigenpairs"),
            pairs == want,
            format!("{pairs:?}"),
            None,
        );
        // every case-1 pair is a bound state (minus branch, n = 3)
        let sp = out.spectral.as_ref().unwrap();
        ck.push(
            &format!("s={s} bound"),
            sp.eigenpairs
                .iter()
                .all(|p| p.bound_state == qes_core::BoundState::Bound),
            "minus-branch sextic pairs decay on both sides".into(),
            None,
        );
    }
    Ok(TableResult {
        id: "table6".into(),
        rows: ck.rows,
    })
}

fn table7() -> Result<TableResult> {
    let mut ck = Checker::new();
    for (s, j, expect) in TABLE7_T {
        let out = run_case(&sextic_case2_potential(j), &[], BranchSign::Minus, s)?;
        ck.eq(&format!("s={s} T"), &t_poly_of(&out), expect, None);
    }
    Ok(TableResult {
        id: "table7".into(),
        rows: ck.rows,
    })
}

fn table8() -> Result<TableResult> {
    let mut ck = Checker::new();
    let expect: [(usize, i64, Vec<(&str, &str)>); 3] = [
        (1, 1, vec![("0", "x")]),
        (
            3,
            2,
            vec![
                ("-2*sqrt(6)", "x^3 + 1/2*sqrt(6)*x"),
                ("2*sqrt(6)", "x^3 - 1/2*sqrt(6)*x"),
            ],
        ),
        (
            5,
            3,
            vec![
                ("-8*sqrt(2)", "x^5 + 2*sqrt(2)*x^3 + 3/2*x"),
                ("0", "x^5 - 5/2*x"),
                ("8*sqrt(2)", "x^5 - 2*sqrt(2)*x^3 + 3/2*x"),
            ],
        ),
    ];
    for (s, j, rows) in expect {
        let out = run_case(&sextic_case2_potential(j), &[], BranchSign::Minus, s)?;
        let pairs = eigenpair_summaries(&out);
        let want: Vec<(String, String)> = rows
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        ck.push(
            &format!("s={s} eigenpairs"),
            pairs == want,
            format!("{pairs:?}"),
            None,
        );
    }
    Ok(TableResult {
        id: "table8".into(),
        rows: ck.rows,
    })
}

// ---------------------------------------------------------------------------
// octic, dodecatic, tetradecatic verdict tables
// ---------------------------------------------------------------------------

fn octic(id: &str, sign: BranchSign) -> Result<TableResult> {
    let mut ck = Checker::new();
    let mu = |s: i64| {
        if sign == BranchSign::Plus {
            2 * s + 4
        } else {
            -2 * s - 4
        }
    };
    for s in 0..=5usize {
        let out = run_case(OCTIC, &[], sign, s)?;
        match s {
            0 => {
                ck.contains(
                    "s=0 mu",
                    &param_constraints_of(&out),
                    &mu_constraint(mu(0)),
                    None,
                );
                ck.push(
                    "s=0 delta free",
                    free_params_of(&out) == vec!["delta".to_string()],
                    format!("{:?}", free_params_of(&out)),
                    None,
                );
                ck.push(
                    "s=0 spectrum",
                    eigenpair_summaries(&out) == vec![("0".to_string(), "1".to_string())],
                    format!("{:?}", eigenpair_summaries(&out)),
                    None,
                );
            }
            1 | 5 => {
                ck.contains(
                    &format!("s={s} mu"),
                    &param_constraints_of(&out),
                    &mu_constraint(mu(s as i64)),
                    None,
                );
                // s=1 pins delta linearly; s=5 pins it through (delta+2)^3
                let pinned = out
                    .spectral
                    .as_ref()
                    .map(|sp| sp.pinned_params.clone())
                    .unwrap_or_default();
                ck.push(
                    &format!("s={s} delta"),
                    pinned
                        .iter()
                        .any(|(n, v)| n == "delta" && v == &qes_core::rat_int(-2)),
                    format!("{pinned:?}"),
                    None,
                );
                let p = if s == 1 {
                    "x".to_string()
                } else if sign == BranchSign::Plus {
                    "x^5 + 2".to_string()
                } else {
                    "x^5 - 2".to_string()
                };
                ck.push(
                    &format!("s={s} spectrum"),
                    eigenpair_summaries(&out) == vec![("0".to_string(), p.clone())],
                    format!(
                        "expected lambda=0 with P={p}, got {:?}",
                        eigenpair_summaries(&out)
                    ),
                    None,
                );
            }
            _ => {
                let basis_unit = out
                    .basis
                    .as_ref()
                    .map(|b| b.is_unit_ideal())
                    .unwrap_or(false);
                ck.push(
                    &format!("s={s} not integrable"),
                    verdict_of(&out) == "not_integrable" && basis_unit,
                    format!("verdict {}", verdict_of(&out)),
                    None,
                );
            }
        }
    }
    Ok(TableResult {
        id: id.to_string(),
        rows: ck.rows,
    })
}

fn mu_constraint(mu: i64) -> String {
    if mu >= 0 {
        format!("mu - {mu}")
    } else {
        format!("mu + {}", -mu)
    }
}

fn dodecatic() -> Result<TableResult> {
    let mut ck = Checker::new();
    for sign in [BranchSign::Plus, BranchSign::Minus] {
        let tag = sign.label();
        let mu = |s: i64| {
            if sign == BranchSign::Plus {
                2 * s + 6
            } else {
                -2 * s - 6
            }
        };
        for s in 0..=4usize {
            let out = run_case(DODECATIC, &[], sign, s)?;
            match s {
                0 => {
                    ck.contains(
                        &format!("{tag} s=0 mu"),
                        &param_constraints_of(&out),
                        &mu_constraint(mu(0)),
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=0 lambda"),
                        &lambda_constraints_of(&out),
                        "4*lambda + kappa^2",
                        None,
                    );
                    ck.push(
                        &format!("{tag} s=0 kappa free"),
                        free_params_of(&out) == vec!["kappa".to_string()],
                        format!("{:?}", free_params_of(&out)),
                        None,
                    );
                    let p = out
                        .spectral
                        .as_ref()
                        .and_then(|sp| sp.symbolic_p.as_ref())
                        .map(|_| "1".to_string());
                    ck.push(
                        &format!("{tag} s=0 P"),
                        p == Some("1".to_string()),
                        format!("{p:?}"),
                        None,
                    );
                }
                1 => {
                    ck.contains(
                        &format!("{tag} s=1 mu"),
                        &param_constraints_of(&out),
                        &mu_constraint(mu(1)),
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=1 kappa"),
                        &param_constraints_of(&out),
                        "kappa",
                        None,
                    );
                    ck.push(
                        &format!("{tag} s=1 spectrum"),
                        eigenpair_summaries(&out) == vec![("0".to_string(), "x".to_string())],
                        format!("{:?}", eigenpair_summaries(&out)),
                        None,
                    );
                }
                _ => {
                    ck.push(
                        &format!("{tag} s={s} not integrable"),
                        verdict_of(&out) == "not_integrable",
                        format!("verdict {}", verdict_of(&out)),
                        None,
                    );
                }
            }
        }
    }
    Ok(TableResult {
        id: "table14".into(),
        rows: ck.rows,
    })
}

fn tetradecatic() -> Result<TableResult> {
    let mut ck = Checker::new();
    for sign in [BranchSign::Plus, BranchSign::Minus] {
        let tag = sign.label();
        let mu = |s: i64| {
            if sign == BranchSign::Plus {
                2 * s + 7
            } else {
                -2 * s - 7
            }
        };
        for s in 0..=4usize {
            let out = run_case(TETRADECATIC, &[], sign, s)?;
            match s {
                0 => {
                    ck.contains(
                        &format!("{tag} s=0 mu"),
                        &param_constraints_of(&out),
                        &mu_constraint(mu(0)),
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=0 kappa"),
                        &param_constraints_of(&out),
                        "kappa",
                        None,
                    );
                    ck.push(
                        &format!("{tag} s=0 delta free"),
                        free_params_of(&out) == vec!["delta".to_string()],
                        format!("{:?}", free_params_of(&out)),
                        None,
                    );
                    ck.push(
                        &format!("{tag} s=0 spectrum"),
                        eigenpair_summaries(&out) == vec![("0".to_string(), "1".to_string())],
                        format!("{:?}", eigenpair_summaries(&out)),
                        None,
                    );
                }
                1 => {
                    ck.contains(
                        &format!("{tag} s=1 mu"),
                        &param_constraints_of(&out),
                        &mu_constraint(mu(1)),
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=1 delta"),
                        &param_constraints_of(&out),
                        "delta + 2",
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=1 kappa"),
                        &param_constraints_of(&out),
                        "kappa",
                        None,
                    );
                    ck.push(
                        &format!("{tag} s=1 spectrum"),
                        eigenpair_summaries(&out) == vec![("0".to_string(), "x".to_string())],
                        format!("{:?}", eigenpair_summaries(&out)),
                        None,
                    );
                }
                2 | 3 => {
                    ck.push(
                        &format!("{tag} s={s} not integrable"),
                        verdict_of(&out) == "not_integrable",
                        format!("verdict {}", verdict_of(&out)),
                        None,
                    );
                }
                _ => {
                    // s = 4: the published table prints "Not integrable", but
                    // the case ideal is proper: kappa^2 = -96 (plus branch)
                    // or kappa^2 = 96 (minus branch) with delta = -2 and
                    // lambda = 0 admits P = x^4 -+ kappa/8. On the minus
                    // branch the two real potentials x^14 - 15 x^6 +- 4
                    // sqrt(6) x^2 even carry bound states.
                    let flag = "published table says not integrable at s=4; the case ideal is proper (see kappa constraint)";
                    ck.push(
                        &format!("{tag} s=4 verdict"),
                        verdict_of(&out) == "integrable",
                        format!("verdict {}", verdict_of(&out)),
                        Some(flag),
                    );
                    let kappa_sq = if sign == BranchSign::Plus {
                        "kappa^2 + 96"
                    } else {
                        "kappa^2 - 96"
                    };
                    ck.contains(
                        &format!("{tag} s=4 kappa"),
                        &param_constraints_of(&out),
                        kappa_sq,
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=4 delta"),
                        &param_constraints_of(&out),
                        "delta + 2",
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=4 mu"),
                        &param_constraints_of(&out),
                        &mu_constraint(mu(4)),
                        None,
                    );
                    ck.contains(
                        &format!("{tag} s=4 lambda"),
                        &lambda_constraints_of(&out),
                        "lambda",
                        None,
                    );
                    let p = out
                        .spectral
                        .as_ref()
                        .and_then(|sp| sp.symbolic_p.as_ref())
                        .map(|coeffs| render_symbolic(&out, coeffs))
                        .transpose()?
                        .unwrap_or_else(|| "<absent>".to_string());
                    let want_p = if sign == BranchSign::Plus {
                        "x^4 - 1/8*kappa"
                    } else {
                        "x^4 + 1/8*kappa"
                    };
                    ck.eq(&format!("{tag} s=4 P"), &p, want_p, None);
                }
            }
        }
    }
    Ok(TableResult {
        id: "table15".into(),
        rows: ck.rows,
    })
}

// ---------------------------------------------------------------------------
// decatic
// ---------------------------------------------------------------------------

struct DecaticRow {
    s: usize,
    delta: &'static str,
    m: &'static str,
    lambda: &'static str,
    p: &'static str,
}

const TABLE11_ROWS: [DecaticRow; 4] = [
    DecaticRow {
        s: 0,
        delta: "8*delta - 37",
        m: "64*epsilon + 87",
        lambda: "8*lambda + 3",
        p: "1",
    },
    DecaticRow {
        s: 1,
        delta: "8*delta - 53",
        m: "64*epsilon + 151",
        lambda: "8*lambda + 9",
        p: "x",
    },
    DecaticRow {
        s: 2,
        delta: "8*delta - 69",
        m: "262144*epsilon^3 + 2117632*epsilon^2 + 6925504*epsilon + 17694023",
        lambda: "16384*lambda + 4096*epsilon^2 + 19328*epsilon + 49425",
        p: "x^2 - 1/4*epsilon - 215/256",
    },
    DecaticRow {
        s: 3,
        delta: "8*delta - 85",
        m: "262144*epsilon^3 + 2904064*epsilon^2 + 11947200*epsilon + 43776519",
        lambda: "16384*lambda + 4096*epsilon^2 + 27520*epsilon + 85137",
        p: "x^3 + (-1/4*epsilon - 279/256)*x",
    },
];

const TABLE12_ROWS: [DecaticRow; 4] = [
    DecaticRow {
        s: 0,
        delta: "8*delta + 43",
        m: "64*epsilon - 105",
        lambda: "8*lambda - 3",
        p: "1",
    },
    DecaticRow {
        s: 1,
        delta: "8*delta + 59",
        m: "64*epsilon - 169",
        lambda: "8*lambda - 9",
        p: "x",
    },
    DecaticRow {
        s: 2,
        delta: "8*delta + 75",
        m: "262144*epsilon^3 - 2338816*epsilon^2 + 8178880*epsilon - 3037945",
        lambda: "16384*lambda - 4096*epsilon^2 + 21632*epsilon - 55185",
        p: "x^2 + 1/4*epsilon - 233/256",
    },
    DecaticRow {
        s: 3,
        delta: "8*delta + 91",
        m: "262144*epsilon^3 - 3125248*epsilon^2 + 13642944*epsilon + 2959431",
        lambda: "16384*lambda - 4096*epsilon^2 + 29824*epsilon - 93201",
        p: "x^3 + (1/4*epsilon - 297/256)*x",
    },
];

fn decatic_constraints(id: &str, sign: BranchSign) -> Result<TableResult> {
    let rows = if sign == BranchSign::Plus {
        &TABLE11_ROWS
    } else {
        &TABLE12_ROWS
    };
    let mut ck = Checker::new();
    for row in rows {
        let out = run_case(DECATIC, &[], sign, row.s)?;
        let params = param_constraints_of(&out);
        ck.contains(&format!("s={} delta", row.s), &params, row.delta, None);
        ck.contains(&format!("s={} M", row.s), &params, row.m, None);
        ck.contains(
            &format!("s={} lambda", row.s),
            &lambda_constraints_of(&out),
            row.lambda,
            None,
        );
        // bound-state family: minus branch binds, plus never does
        let sp = out.spectral.as_ref().unwrap();
        if !sp.eigenpairs.is_empty() {
            let want = if sign == BranchSign::Minus {
                qes_core::BoundState::Bound
            } else {
                qes_core::BoundState::NotBound
            };
            ck.push(
                &format!("s={} bound flags", row.s),
                sp.eigenpairs.iter().all(|p| p.bound_state == want),
                format!("{} branch", sign.label()),
                None,
            );
        }
    }
    Ok(TableResult {
        id: id.to_string(),
        rows: ck.rows,
    })
}

fn table13() -> Result<TableResult> {
    let mut ck = Checker::new();
    for (sign, rows) in [
        (BranchSign::Plus, &TABLE11_ROWS),
        (BranchSign::Minus, &TABLE12_ROWS),
    ] {
        for row in rows {
            let out = run_case(DECATIC, &[], sign, row.s)?;
            let got = out
                .spectral
                .as_ref()
                .and_then(|sp| sp.symbolic_p.as_ref())
                .map(|coeffs| render_symbolic(&out, coeffs))
                .transpose()?
                .unwrap_or_else(|| "<absent>".to_string());
            ck.eq(
                &format!("{} s={} P", sign.label(), row.s),
                &got,
                row.p,
                None,
            );
        }
    }
    Ok(TableResult {
        id: "table13".into(),
        rows: ck.rows,
    })
}

fn render_symbolic(out: &CaseOutcome, coeffs: &[qes_core::MultiPoly]) -> Result<String> {
    let reg = out.registry.clone();
    let mut poly = qes_core::XPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let term = qes_core::XPoly::x_pow(reg.clone(), k).scale_poly(c)?;
        poly = poly.checked_add(&term)?;
    }
    let lead = qes_core::XPoly::x_pow(reg, coeffs.len());
    poly = poly.checked_add(&lead)?;
    Ok(poly.render())
}

/// Reproduce one table (or all), diffing every entry against the stored
/// expectation.
pub fn reproduce(id: &str) -> Result<Vec<TableResult>> {
    let ids: Vec<&str> = if id == "all" {
        known_tables()
    } else if known_tables().contains(&id) {
        vec![known_tables()[known_tables().iter().position(|t| *t == id).unwrap()]]
    } else {
        return Err(Error::Usage(format!(
            "unknown table `{id}` (expected table1..table15 or all)"
        )));
    };
    let mut out = Vec::new();
    for table in ids {
        let result = match table {
            "table1" => quartic_spectral("table1", BranchSign::Plus)?,
            "table2" => quartic_spectral("table2", BranchSign::Minus)?,
            "table3" => quartic_lambda("table3", BranchSign::Plus)?,
            "table4" => quartic_lambda("table4", BranchSign::Minus)?,
            "table5" => table5()?,
            "table6" => table6()?,
            "table7" => table7()?,
            "table8" => table8()?,
            "table9" => octic("table9", BranchSign::Plus)?,
            "table10" => octic("table10", BranchSign::Minus)?,
            "table11" => decatic_constraints("table11", BranchSign::Plus)?,
            "table12" => decatic_constraints("table12", BranchSign::Minus)?,
            "table13" => table13()?,
            "table14" => dodecatic()?,
            "table15" => tetradecatic()?,
            _ => unreachable!(),
        };
        out.push(result);
    }
    Ok(out)
}

/// Render reproduce results, one line per row.
pub fn format_results(results: &[TableResult]) -> String {
    let mut out = String::new();
    for table in results {
        let pass = table.rows.iter().filter(|r| r.pass).count();
        out.push_str(&format!(
            "{}: {}/{} entries match\n",
            table.id,
            pass,
            table.rows.len()
        ));
        for row in &table.rows {
            if !row.pass {
                out.push_str(&format!("  FAIL {}: {}\n", row.label, row.detail));
            } else if let Some(flag) = &row.flag {
                out.push_str(&format!("  NOTE {}: {}\n", row.label, flag));
            }
        }
    }
    out
}
