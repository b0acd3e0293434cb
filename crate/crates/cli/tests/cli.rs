//! End-to-end runs of the binary against the shipped model files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn models_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .canonicalize()
        .expect("models directory")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyquant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(file: &str, args: &[&str]) -> Output {
    let path = models_dir().join(file);
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full.insert(1, path.display().to_string());
    Command::new(env!("CARGO_BIN_EXE_polyquant"))
        .args(&full)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_passes_on_shipped_models() {
    for file in [
        "canonical_1_2.json",
        "canonical_2_3.json",
        "su2_lie.json",
        "rep_diag.json",
        "classify_demo.json",
        "growth_line_d3.json",
        "growth_two_lines.json",
        "qr_counterexample.json",
        "qr_control.json",
        "monodromy_swap.json",
    ] {
        let out = run_on(file, &["check"]);
        assert_eq!(out.status.code(), Some(0), "check failed on {file}");
    }
}

#[test]
fn check_fails_on_invariant_violations() {
    let out = run_on("bad_nonskew.json", &["check"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("component 0"));

    let out = run_on("monodromy_scaled.json", &["check"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("not permuted"));
}

#[test]
fn unreadable_input_exits_two() {
    let out = run(&["check", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("polyquant-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad_version.json");
    std::fs::write(
        &bad,
        r#"{"schema_version": "999", "kind": "lattice", "payload": {}}"#,
    )
    .unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_demo_outputs() {
    let out = run_on("classify_demo.json", &["classify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("period_span_basis                   | 1, 0"));
    assert!(text.contains("period_span_basis                   | 0, 5"));
    assert!(text.contains("quantizable"));

    let out = run_on("classify_exact_case.json", &["classify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("not full rank"));
    assert!(text.contains("witness_prequantum_basis"));
}

#[test]
fn quantize_growth_demo() {
    let out = run_on("growth_line_d3.json", &["quantize", "--k", "1..4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    for dims in ["4", "7", "10", "13"] {
        assert!(text.contains(dims));
    }
    assert!(text.contains("leading 3 vs volume 3"));

    let out = run_on("growth_two_lines.json", &["quantize", "--k", "1..5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("leading 2 vs volume 2"));
}

#[test]
fn qr_counterexample_and_control() {
    let out = run_on("qr_counterexample.json", &["qr", "--k", "1..10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("2  | 6"));
    assert!(text.contains("\u{2260}"));
    assert!(text.contains("PASS expectation_fails_from_level_two"));

    let out = run_on("qr_control.json", &["qr", "--k", "1..10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("PASS expectation_commutes"));
}

#[test]
fn csv_export() {
    let out = run_on("growth_line_d3.json", &["quantize", "--k", "1..3", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.starts_with("k,index,remainder\n"));
    assert!(text.contains("1,4,1\n"));
}

#[test]
fn out_file_written() {
    let dir = std::env::temp_dir().join("polyquant-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("report.json");
    let _ = std::fs::remove_file(&out_path);
    let out = run_on(
        "qr_control.json",
        &["qr", "--k", "1..3", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    let contents = std::fs::read_to_string(&out_path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(json["command"], "qr");
    assert!(json["rows"].as_array().unwrap().len() == 3);
}

#[test]
fn identical_inputs_identical_tables() {
    let a = run_on("qr_counterexample.json", &["qr", "--k", "1..6"]);
    let b = run_on("qr_counterexample.json", &["qr", "--k", "1..6"]);
    assert_eq!(stdout_str(&a), stdout_str(&b));
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("polyquant-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn toric_negative_degree_fails_check() {
    let path = write_temp(
        "neg_degree.json",
        r#"{
  "schema_version": "1",
  "kind": "toric",
  "payload": {
    "factors": 1,
    "action": [1],
    "weights": [{ "degrees": [-1], "shift": "0" }],
    "reduced": { "derive_point_model": true }
  }
}"#,
    );
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("nonnegative"));
}

#[test]
fn quantize_rejects_nonpositive_degrees() {
    let path = write_temp(
        "zero_degree.json",
        r#"{
  "schema_version": "1",
  "kind": "presentation",
  "payload": {
    "dim_v": 1,
    "weights": [["1"]],
    "weight_unit": "2πi",
    "factor_degrees": [[0, 3]],
    "genus": [0, 0],
    "periods": [["0"], ["3"]]
  }
}"#,
    );
    let out = run(&["quantize", path.to_str().unwrap(), "--k", "1..5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("FAIL growth_check"));
}

#[test]
fn malformed_level_range_exits_two() {
    let path = models_dir().join("growth_line_d3.json");
    let out = run(&["quantize", path.to_str().unwrap(), "--k", "5..2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["quantize", path.to_str().unwrap(), "--k", "abc"]);
    assert_eq!(out.status.code(), Some(2));
}
