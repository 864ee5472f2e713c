//! End-to-end tests of the `qes` binary: exit codes, report formats,
//! JSON round-trip and determinism.

use std::io::Write;
use std::process::Command;

use qes_cli::pipeline::{run_pipeline, solve_config};
use qes_cli::problem::{parse_problem_str, prepare};
use qes_cli::report::CaseReport;

fn qes() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qes"))
}

fn write_problem(dir: &std::path::Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    path
}

fn tmpdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qes-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn solve_quartic_json_has_schema_and_round_trips() {
    let dir = tmpdir();
    let file = write_problem(
        &dir,
        "quartic.qes",
        "potential = x^4+4*x^3+2*x^2-mu*x\nparam.mu = free\ns_max = 1\n",
    );
    let output = qes()
        .args(["solve"])
        .arg(&file)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    for key in ["spec", "cases", "summary"] {
        assert!(v.get(key).is_some(), "missing top-level `{key}`");
    }
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 4); // s in {0,1} x both signs
                                // round-trip every case field by field
    for case in cases {
        let report = CaseReport::from_json(case).unwrap();
        assert_eq!(&report.to_json(), case);
    }
    // report ordering is by (s, sign), plus before minus
    let keys: Vec<(u64, String)> = cases
        .iter()
        .map(|c| {
            (
                c["s"].as_u64().unwrap(),
                c["sign"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        keys,
        vec![
            (0, "plus".into()),
            (0, "minus".into()),
            (1, "plus".into()),
            (1, "minus".into())
        ]
    );
}

#[test]
fn identical_spec_gives_byte_identical_reports_modulo_timing() {
    let spec = parse_problem_str("potential = x^6-7*x^2\ns_max = 2\nsigns = minus\n").unwrap();
    let prep = prepare(spec).unwrap();
    let cfg = solve_config(&prep, None);
    let strip_timing = |mut v: serde_json::Value| -> serde_json::Value {
        for case in v["cases"].as_array_mut().unwrap() {
            case["timing_ms"] = serde_json::json!(0);
        }
        v
    };
    let a = strip_timing(run_pipeline(&prep, &cfg).unwrap().to_json(&prep));
    let b = strip_timing(run_pipeline(&prep, &cfg).unwrap().to_json(&prep));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tmpdir();

    // 0: clean run
    let ok = write_problem(&dir, "ok.qes", "potential = x^2\ns_max = 1\n");
    let st = qes().arg("solve").arg(&ok).status().unwrap();
    assert_eq!(st.code(), Some(0));

    // 1: parse error
    let bad = write_problem(&dir, "bad.qes", "potential = 2*x^4\n");
    let st = qes().arg("solve").arg(&bad).status().unwrap();
    assert_eq!(st.code(), Some(1));

    let st = qes()
        .arg("solve")
        .arg(dir.join("missing.qes"))
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));

    // 3: budget exceeded (QES_BUDGET_PAIRS=0 starves the engine)
    let quartic = write_problem(
        &dir,
        "quartic.qes",
        "potential = x^4+4*x^3+2*x^2-mu*x\nparam.mu = free\ns_max = 1\n",
    );
    let st = qes()
        .arg("solve")
        .arg(&quartic)
        .env("QES_BUDGET_PAIRS", "0")
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(3));
}

#[test]
fn groebner_dump_matches_published_inline_basis() {
    let dir = tmpdir();
    let file = write_problem(&dir, "sextic.qes", "potential = x^6-15*x^2\n");
    let output = qes()
        .arg("groebner")
        .arg(&file)
        .args(["--s", "6", "--sign", "minus"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "order: lex [p5 > p4 > p3 > p2 > p1 > p0 > lambda]"
    );
    assert_eq!(
        lines[1..],
        [
            "lambda^4 - 240*lambda^2 + 2880",
            "384*p0 + lambda^3 - 216*lambda",
            "p1",
            "32*p2 - lambda^2 + 120",
            "p3",
            "4*p4 + lambda",
            "p5",
        ]
    );
}

#[test]
fn odd_degree_and_constant_potentials_short_circuit() {
    let dir = tmpdir();
    let odd = write_problem(&dir, "odd.qes", "potential = x^3\n");
    let output = qes()
        .arg("solve")
        .arg(&odd)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["guard"], "not_integrable");
    assert!(v["cases"].as_array().unwrap().is_empty());

    let flat = write_problem(&dir, "flat.qes", "potential = 0\n");
    let output = qes()
        .arg("solve")
        .arg(&flat)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["guard"], "unconstrained");
}

#[test]
fn reproduce_single_table() {
    let output = qes()
        .args(["reproduce", "--table", "table7"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("table7: 5/5 entries match"));
    assert!(text.contains("corpus: PASS"));

    let output = qes()
        .args(["reproduce", "--table", "table99"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn markdown_format_renders_tables() {
    let dir = tmpdir();
    let file = write_problem(&dir, "h.qes", "potential = x^2\ns_max = 1\nsigns = minus\n");
    let output = qes()
        .arg("solve")
        .arg(&file)
        .args(["--format", "md"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("| T(s, lambda) | `lambda - 1` |"));
    assert!(text.contains("| `1` | bound |"));
}
