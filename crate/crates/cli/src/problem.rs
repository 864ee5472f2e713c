//! Problem-file parsing: a flat key-value format describing one potential
//! and the run options.
//!
//! ```text
//! # quartic family
//! potential = x^4+4*x^3+2*x^2-mu*x
//! param.mu  = free
//! s_max     = 5
//! signs     = both
//! tolerance = 1e-10
//! precision = 50
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qes_core::{parse_potential, BranchSign, Error, Guard, Rational, Result, VarRegistry, XPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Free,
    Value(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub potential: String,
    pub bindings: Vec<(String, Binding)>,
    pub s_max: usize,
    pub signs: Vec<BranchSign>,
    pub tolerance: Rational,
    pub precision: u32,
}

impl Default for ProblemSpec {
    fn default() -> Self {
        ProblemSpec {
            potential: String::new(),
            bindings: Vec::new(),
            s_max: 10,
            signs: vec![BranchSign::Plus, BranchSign::Minus],
            tolerance: Rational::new(BigInt::one(), BigInt::from(10u64.pow(10))),
            precision: 50,
        }
    }
}

/// Rational literals in problem files: `a`, `a/b`, decimals `a.b`, and
/// scientific `a e±k` forms, all exact.
pub fn parse_extended_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    Some(if shift >= 0 {
        Rational::from(n * ten.pow(shift as u32))
    } else {
        Rational::new(n, ten.pow((-shift) as u32))
    })
}

/// Parse problem text. Errors carry a 1-based line number.
pub fn parse_problem_str(text: &str) -> Result<ProblemSpec> {
    let mut spec = ProblemSpec::default();
    let mut saw_potential = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            pos: lineno + 1,
            msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err("expected `key = value`".into()))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "potential" => {
                spec.potential = value.to_string();
                saw_potential = true;
            }
            "s_max" => {
                spec.s_max = value
                    .parse()
                    .map_err(|_| err(format!("invalid s_max `{value}`")))?;
            }
            "signs" => {
                spec.signs = match value {
                    "both" => vec![BranchSign::Plus, BranchSign::Minus],
                    other => vec![BranchSign::parse(other)
                        .ok_or_else(|| err(format!("invalid signs `{other}`")))?],
                };
            }
            "tolerance" => {
                spec.tolerance = parse_extended_rational(value)
                    .ok_or_else(|| err(format!("invalid tolerance `{value}`")))?;
            }
            "precision" => {
                spec.precision = value
                    .parse()
                    .map_err(|_| err(format!("invalid precision `{value}`")))?;
            }
            _ => match key.strip_prefix("param.") {
                Some(name) => {
                    let binding = if value == "free" {
                        Binding::Free
                    } else {
                        Binding::Value(parse_extended_rational(value).ok_or_else(|| {
                            err(format!("invalid value `{value}` for parameter `{name}`"))
                        })?)
                    };
                    spec.bindings.push((name.to_string(), binding));
                }
                None => return Err(err(format!("unknown key `{key}`"))),
            },
        }
    }
    if !saw_potential {
        return Err(Error::Parse {
            pos: 0,
            msg: "missing `potential` key".into(),
        });
    }
    Ok(spec)
}

/// A validated problem: parsed potential with bindings substituted, plus the
/// degree guard.
#[derive(Debug, Clone)]
pub struct PreparedProblem {
    pub spec: ProblemSpec,
    pub potential: XPoly,
    pub registry: Arc<VarRegistry>,
    pub guard: Guard,
}

pub fn prepare(spec: ProblemSpec) -> Result<PreparedProblem> {
    let (raw, registry) = parse_potential(&spec.potential)?;
    let mut potential = raw;
    for (name, binding) in &spec.bindings {
        let idx = registry
            .index_of(name)
            .ok_or_else(|| Error::Usage(format!("parameter `{name}` not in the potential")))?;
        if let Binding::Value(v) = binding {
            potential = potential.substitute(idx, v);
        }
    }
    let guard = qes_core::parity_guard(&potential);
    if matches!(guard, Guard::Even { n, .. } if n >= 1) && !potential.is_monic() {
        return Err(Error::Usage(format!(
            "potential must be monic after binding; leading coefficient is `{}`",
            potential.leading().map(|c| c.render()).unwrap_or_default()
        )));
    }
    Ok(PreparedProblem {
        spec,
        potential,
        registry,
        guard,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qes_core::rat;

    #[test]
    fn rational_literal_forms() {
        assert_eq!(parse_extended_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_extended_rational("-2"), Some(rat(-2, 1)));
        assert_eq!(parse_extended_rational("0.5"), Some(rat(1, 2)));
        assert_eq!(
            parse_extended_rational("1e-10"),
            Some(Rational::new(BigInt::one(), BigInt::from(10u64.pow(10))))
        );
        assert_eq!(parse_extended_rational("2.5e2"), Some(rat(250, 1)));
        assert_eq!(parse_extended_rational("1/0"), None);
    }

    #[test]
    fn problem_file_round() {
        let spec = parse_problem_str(
            "# quartic\npotential = x^4+4*x^3+2*x^2-mu*x\nparam.mu = free\ns_max = 5\nsigns = plus\n",
        )
        .unwrap();
        assert_eq!(spec.s_max, 5);
        assert_eq!(spec.signs, vec![BranchSign::Plus]);
        let prep = prepare(spec).unwrap();
        assert!(matches!(prep.guard, Guard::Even { n: 2, .. }));
    }

    #[test]
    fn binding_substitution_and_monicity() {
        let spec = parse_problem_str("potential = a*x^4+x\nparam.a = 2\n").unwrap();
        assert!(matches!(prepare(spec), Err(Error::Usage(_))));
        let spec = parse_problem_str("potential = a*x^4+x^2\nparam.a = 1\n").unwrap();
        let prep = prepare(spec).unwrap();
        assert!(matches!(prep.guard, Guard::Even { n: 2, .. }));
    }

    #[test]
    fn odd_degree_is_a_clean_verdict_not_an_error() {
        let spec = parse_problem_str("potential = x^3\n").unwrap();
        let prep = prepare(spec).unwrap();
        assert!(matches!(prep.guard, Guard::OddDegree));
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_problem_str("potential = x^2\nnonsense\n") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
