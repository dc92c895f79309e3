use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use clap::Parser;
use q2scaling::reproduce::Expected;
use q2scaling_cli::{reproduce_with, run, Cli, Format, EXIT_NEGATIVE, EXIT_OK, FORMAT_VERSION};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_q2scaling")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn matrix_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("q2scaling-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_counterexample_file_is_p() {
    let path = matrix_file("eq.txt", "2\n1 2\n-1 5\n");
    let o = bin(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // principal minors 1, 5 and det 7
    assert!(text.contains("principal minor sums: c1 = 6, c2 = 7"), "{text}");
    assert!(text.contains("P: holds"));
    assert!(text.contains("Q (Hershkowitz-Keller sense): holds"));
}

#[test]
fn analyze_structured_reports_minors() {
    let o = bin(&["--format", "structured", "analyze", "--matrix", "1 2; -1 5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["format_version"], FORMAT_VERSION);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["report"]["principal_minor_sums"], serde_json::json!(["6", "7"]));
    assert_eq!(v["report"]["p"]["verdict"], "holds");
}

#[test]
fn analyze_identity_all_hold() {
    let path = matrix_file("id.txt", "3\n1 0 0\n0 1 0\n0 0 1\n");
    let o = bin(&["--format", "structured", "analyze", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for class in ["p", "p0", "p0_plus", "q", "anti_sign_symmetric"] {
        assert_eq!(v["report"][class]["verdict"], "holds", "{class}");
    }
}

#[test]
fn analyze_square_fails_p0_at_first_index() {
    let path = matrix_file("sq.json", r#"{"n": 2, "rows": [["-1", "12"], ["-6", "23"]]}"#);
    let o = bin(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P0: fails at {1}, minor -1"));
}

#[test]
fn analyze_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_q2scaling"))
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2\n1/2 0\n0 3\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c1 = 7/2, c2 = 3/2"));
}

#[test]
fn parse_error_reports_position() {
    let path = matrix_file("bad.txt", "2\n1 2\n-1 x\n");
    let o = bin(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("column 4"), "{err}");
}

#[test]
fn missing_input_is_usage_error() {
    assert_eq!(bin(&["analyze"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn q2scaling_prints_invariants_and_certificates() {
    let o = bin(&["q2scaling", "--matrix", "1 2; -1 5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("p1 = 1*d1^2 - 4*d1*d2 + 25*d2^2"));
    assert!(text.contains("completion (d1 - 2*d2)^2 + 21*d2^2"));
    assert!(text.contains("p2 = 49*d1^2*d2^2"));
    assert!(text.contains("nonnegative coefficients"));
    assert!(text.contains(": certified"));
}

#[test]
fn scaling_alias_and_identity() {
    let o = bin(&["scaling", "--matrix", "1 0; 0 1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("p1 = 1*d1^2 + 1*d2^2"));
    assert!(text.contains("p2 = 1*d1^2*d2^2"));
    assert_eq!(text.matches("nonnegative coefficients").count(), 2);
}

#[test]
fn q2scaling_nilpotent_is_refuted() {
    let o = bin(&["--format", "structured", "q2scaling", "--matrix", "0 1; 0 0"]);
    assert_eq!(o.status.code(), Some(EXIT_NEGATIVE as i32));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "q2scaling");
    let text = bin(&["q2scaling", "--matrix", "0 1; 0 0"]);
    assert!(stdout(&text).contains("refuted at D = diag("));
}

#[test]
fn q2scaling_symbolic_guard() {
    let o = bin(&["--max-symbolic-dim", "1", "q2scaling", "--matrix", "1 2; -1 5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit 1"));
}

#[test]
fn reproduce_exits_zero_and_is_stable() {
    let a = bin(&["reproduce"]);
    let b = bin(&["reproduce"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for needle in ["det A = 7", "-1 12", "-6 23", "a12 * a21 = -2", "result: all"] {
        assert!(text.contains(needle), "{needle}");
    }
}

#[test]
fn reproduce_structured() {
    let o = bin(&["--format", "structured", "reproduce"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["format_version"], FORMAT_VERSION);
    assert_eq!(v["command"], "reproduce");
    let text = stdout(&o);
    assert!(text.contains("1*d1^2 - 4*d1*d2 + 25*d2^2"));
    assert!(text.contains("49*d1^2*d2^2"));
}

#[test]
fn tampered_constant_fails_reproduction() {
    let mut expected = Expected::counterexample();
    expected.determinant = 8;
    let mut sink = Vec::new();
    let outcome = reproduce_with(&expected, Format::Text, &mut sink).unwrap();
    assert_ne!(outcome.code, EXIT_OK);
    assert!(outcome.message.unwrap().contains("det A"));

    let mut expected = Expected::counterexample();
    expected.completion = "(d1 - 3*d2)^2 + 16*d2^2".into();
    let outcome = reproduce_with(&expected, Format::Structured, &mut Vec::new()).unwrap();
    assert_ne!(outcome.code, EXIT_OK);
}

#[test]
fn library_run_matches_binary() {
    let cli = Cli::try_parse_from(["q2scaling", "reproduce"]).unwrap();
    let mut out = Vec::new();
    assert_eq!(run(&cli, &mut out).unwrap().code, EXIT_OK);
    assert_eq!(out, bin(&["reproduce"]).stdout);
}

#[test]
fn hunt_is_deterministic() {
    let args = ["hunt", "--dim", "2", "--range", "5", "--count", "1000", "--seed", "42"];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
    assert!(stdout(&a).contains("summary: 1000 candidates"));
}

#[test]
fn hunt_window_contains_counterexample() {
    let o = bin(&["hunt", "--dim", "2", "--range", "5", "--count", "200", "--seed", "128"]);
    assert_eq!(o.status.code(), Some(EXIT_NEGATIVE as i32));
    let text = stdout(&o);
    let at = text.find("candidate 101: A = [[1, 2], [-1, 5]]").expect("candidate 101 reported");
    assert!(text[at..].lines().nth(3).unwrap().contains("counterexample to: general claim, 2x2 claim"));
}

#[test]
fn hunt_structured() {
    let o = bin(&["--format", "structured", "hunt", "--count", "50", "--mode", "spd", "--reject-singular"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "hunt");
    assert_eq!(v["format_version"], FORMAT_VERSION);
}

#[test]
fn hunt_dimension_guard() {
    let o = bin(&["hunt", "--dim", "13"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit 12"));
    assert_eq!(bin(&["hunt", "--budget", "0"]).status.code(), Some(2));
}

#[test]
fn inline_matrix_matches_text_form() {
    assert_eq!(q2scaling_cli::inline_to_text("1 2; -1 5"), "2\n1 2\n-1 5\n");
}
