//! CLI contract tests: golden outputs for the documented invocations,
//! the exit-code contract (0 symmetry/success, 1 verified false,
//! 2 usage, 3 internal), and byte-determinism of repeated runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sl2ode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2ode"))
        .args(args)
        .env_remove("SL2ODE_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn gen_coeffs_golden_outputs() {
    let out = sl2ode(&["gen-coeffs", "--k", "4", "--source", "recursion"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a = [6, -6]\n");

    let out = sl2ode(&["gen-coeffs", "--k", "5", "--source", "recursion"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a = [10, -30, 45/2]\n");
}

#[test]
fn gen_coeffs_out_of_range_is_a_usage_error() {
    let out = sl2ode(&["gen-coeffs", "--k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("k >= 4"), "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn gen_coeffs_both_sources_report_the_sign_relation() {
    let out = sl2ode(&["gen-coeffs", "--k", "4", "--source", "both"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("recursion: a = [6, -6]"));
    assert!(text.contains("closed_form: a = [-6, 6]"));
    assert!(text.contains("|closed_form(q)| == |recursion(q)|"));
    assert!(text.contains("sign(closed_form/recursion) = -1"));
}

#[test]
fn gen_eq_golden_outputs() {
    let out = sl2ode(&["gen-eq", "eq9", "--format", "ascii"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3*y''^2 - 2*y'*y''' = 0\n");

    let out = sl2ode(&["gen-eq", "eq3", "--k", "4", "--format", "ascii"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "y^(4) = 6*y''*y'''/y' - 6*y''^3/y'^2\n");

    let out = sl2ode(&["gen-eq", "eq10", "--k", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("+ (y + (2*y'*y''' - 3*y''^2)/y'^4)*y'^4"),
        "eq10 display must append the restriction term: {text}"
    );
    assert_eq!(
        text,
        "y^(4) - 6*y''*y'''/y' + 6*y''^3/y'^2 + (y + (2*y'*y''' - 3*y''^2)/y'^4)*y'^4 = 0\n"
    );
}

#[test]
fn gen_eq_latex_normalizes_to_the_printed_third_order_equation() {
    let out = sl2ode(&["gen-eq", "eq9", "--format", "latex"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3 (y'')^2 - 2 y' y''' = 0\n");
}

#[test]
fn gen_eq_requires_a_consistent_order() {
    let out = sl2ode(&["gen-eq", "eq3"]);
    assert_eq!(code(&out), 2);
    let out = sl2ode(&["gen-eq", "eq3", "--k", "3"]);
    assert_eq!(code(&out), 2);
    let out = sl2ode(&["gen-eq", "eq9", "--k", "4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("fixed at order 3"));
    let out = sl2ode(&["gen-eq", "eq9", "--k", "3"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_exit_code_contract() {
    let out = sl2ode(&["verify", "--family", "eq3", "--k", "6", "--field", "X3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "SYMMETRY\n");

    let out = sl2ode(&["verify", "--family", "eq10", "--k", "4", "--field", "xi=0; eta=y"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("NOT A SYMMETRY\n"));
    assert_eq!(text, "NOT A SYMMETRY\nresidual = 4*y*y'^4 + 2*y'*y''' - 3*y''^2\n");

    let out = sl2ode(&["verify", "--family", "eq9", "--field", "xi=0; eta=y^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "SYMMETRY\n");
}

#[test]
fn verify_parse_errors_carry_positions() {
    let out = sl2ode(&["verify", "--family", "eq3", "--k", "4", "--field", "xi = @; eta = 0"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("position"), "stderr: {err}");
}

#[test]
fn solve_reports_the_three_reference_algebras() {
    let out = sl2ode(&["solve", "--family", "eq3", "--k", "5", "--degree", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dimension: 5"));
    assert!(text.contains("classification: SL2R_PLUS_R2"));

    let out = sl2ode(&["solve", "--family", "eq10", "--k", "5", "--degree", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dimension: 3"));
    assert!(text.contains("classification: SL2R\n"));

    let out = sl2ode(&["solve", "--family", "eq9", "--degree", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dimension: 6"));
    assert!(text.contains("classification: SL2R_PLUS_SL2R"));
    assert!(text.contains("note: exact within the polynomial ansatz of total degree <= 2"));
}

#[test]
fn solve_usage_errors() {
    let out = sl2ode(&["solve", "--family", "eq3", "--k", "4", "--degree", "0"]);
    assert_eq!(code(&out), 2);
    let out = sl2ode(&["solve", "--degree", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--family or --ode-file"));
}

#[test]
fn clap_usage_errors_exit_2() {
    let out = sl2ode(&["gen-eq", "eq7", "--k", "4"]);
    assert_eq!(code(&out), 2);
    let out = sl2ode(&["no-such-command"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["solve", "--family", "eq3", "--k", "4", "--degree", "2", "--format", "json"],
        vec!["gen-eq", "eq10", "--k", "5", "--format", "json"],
        vec!["gen-coeffs", "--k", "7", "--source", "both"],
        vec!["solve", "--family", "eq9", "--degree", "2"],
    ] {
        let a = sl2ode(&args);
        let b = sl2ode(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "output bytes differ for {args:?}");
    }
}

#[test]
fn ode_file_round_trip() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("sl2ode-test-{}.json", std::process::id()));
    let out = sl2ode(&[
        "gen-eq",
        "eq10",
        "--k",
        "4",
        "--format",
        "json",
        "--output",
        path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(code(&out), 0);

    let out = sl2ode(&["verify", "--ode-file", path.to_str().unwrap(), "--field", "X1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "SYMMETRY\n");

    let out = sl2ode(&["solve", "--ode-file", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dimension: 3"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn custom_ode_documents_load() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("sl2ode-custom-{}.json", std::process::id()));
    std::fs::write(&path, r#"{ "order": 3, "rhs": "3*y''^2/(2*y')" }"#).expect("write temp file");
    let out = sl2ode(&["solve", "--ode-file", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("dimension: 6"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn format_env_var_sets_the_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_sl2ode"))
        .args(["gen-coeffs", "--k", "4"])
        .env("SL2ODE_FORMAT", "json")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["a"][0], "6");
    assert_eq!(doc["a"][1], "-6");

    let out = Command::new(env!("CARGO_BIN_EXE_sl2ode"))
        .args(["gen-coeffs", "--k", "4"])
        .env("SL2ODE_FORMAT", "yaml")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 2);
}

#[test]
fn closed_form_source_flows_through_gen_eq() {
    // The closed-form coefficients differ by a global sign; the
    // generated equation is then not X3-invariant, which the verify
    // pipeline exposes.
    let out = sl2ode(&["gen-eq", "eq3", "--k", "4", "--source", "closed-form"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "y^(4) = -6*y''*y'''/y' + 6*y''^3/y'^2\n");
}
