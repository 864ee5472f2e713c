use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qes_cli::corpus;
use qes_cli::pipeline::{exit_class_for, run_pipeline, solve_config, ExitClass};
use qes_cli::problem::{parse_problem_str, prepare};
use qes_core::{BranchSign, Error, Guard, SolveConfig};

/// Exact Liouvillian-integrability solver for even polynomial potentials.
#[derive(Parser)]
#[command(name = "qes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Md,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline over every (sign, s) case of a problem file.
    Solve {
        file: PathBuf,
        /// Override the problem file's s_max.
        #[arg(long = "s-max")]
        s_max: Option<usize>,
        /// Restrict to one branch sign.
        #[arg(long)]
        sign: Option<SignArg>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Dump the reduced Gröbner basis of a single case.
    Groebner {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        sign: String,
    },
    /// Recompute the built-in results corpus and diff against stored values.
    Reproduce {
        /// table1..table15, or all.
        #[arg(long, default_value = "all")]
        table: String,
    },
}

fn budget_from_env() -> Option<usize> {
    std::env::var("QES_BUDGET_PAIRS")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn load_problem(path: &PathBuf) -> Result<qes_cli::problem::PreparedProblem, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    prepare(parse_problem_str(&text)?)
}

fn run() -> Result<ExitClass, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            file,
            s_max,
            sign,
            format,
        } => {
            let mut prep = load_problem(&file)?;
            if let Some(s_max) = s_max {
                prep.spec.s_max = s_max;
            }
            if let Some(sign) = sign {
                prep.spec.signs = match sign {
                    SignArg::Plus => vec![BranchSign::Plus],
                    SignArg::Minus => vec![BranchSign::Minus],
                    SignArg::Both => vec![BranchSign::Plus, BranchSign::Minus],
                };
            }
            let cfg = solve_config(&prep, budget_from_env());
            let report = run_pipeline(&prep, &cfg)?;
            match format {
                FormatArg::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report.to_json(&prep)).unwrap()
                    )
                }
                FormatArg::Md => print!("{}", report.to_markdown(&prep)),
                FormatArg::Table => print!("{}", report.to_text(&prep)),
            }
            Ok(report.exit)
        }
        Command::Groebner { file, s, sign } => {
            let prep = load_problem(&file)?;
            let sign = BranchSign::parse(&sign)
                .ok_or_else(|| Error::Usage(format!("invalid sign `{sign}`")))?;
            let n = match prep.guard {
                Guard::Even { n, .. } if n >= 1 => n,
                Guard::Even { .. } => {
                    return Err(Error::Usage("constant potential has no case ideals".into()))
                }
                Guard::OddDegree => {
                    return Err(Error::Usage(
                        "odd-degree potential: not integrable, no case ideals".into(),
                    ))
                }
            };
            let mut cfg = SolveConfig {
                tolerance: prep.spec.tolerance.clone(),
                precision: prep.spec.precision,
                ..SolveConfig::default()
            };
            if let Some(pairs) = budget_from_env() {
                cfg.groebner.max_pairs = pairs;
            }
            let outcome = qes_core::solve_case(&prep.potential, n, sign, s, &cfg)?;
            match (&outcome.basis, &outcome.budget_error) {
                (Some(basis), _) => {
                    let names: Vec<&str> = (0..outcome.registry.len())
                        .map(|i| outcome.registry.name(i))
                        .collect();
                    print!("{}", basis.dump(&names));
                    Ok(ExitClass::Ok)
                }
                (None, Some(msg)) => {
                    eprintln!("budget exceeded: {msg}");
                    Ok(ExitClass::Budget)
                }
                (None, None) => Err(Error::Internal("no basis and no budget error".into())),
            }
        }
        Command::Reproduce { table } => {
            let results = corpus::reproduce(&table)?;
            print!("{}", corpus::format_results(&results));
            let all_pass = results.iter().all(|t| t.passed());
            if all_pass {
                println!("corpus: PASS");
                Ok(ExitClass::Ok)
            } else {
                println!("corpus: FAIL");
                Ok(ExitClass::VerifyFailure)
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(class) => ExitCode::from(class.code() as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class_for(&err).code() as u8)
        }
    }
}
