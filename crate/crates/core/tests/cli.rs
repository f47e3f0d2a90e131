use std::fs;
use std::process::{Command, Output};

use riesz_matvar::distribution::MatrixJson;

const BIN: &str = env!("CARGO_BIN_EXE_riesz-matvar");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const PEARSON: &str =
    r#"{"family": "pearson2_riesz", "variant": "I", "beta": 1, "m": 1, "n": 2, "nu": 3.0, "kappa": [0.5], "tau": [0.25]}"#;

#[test]
fn pdf_inside_and_outside_the_support() {
    let inside = run(&["pdf", "--params", PEARSON, "--point", r#"{"beta": 1, "rows": 2, "cols": 1, "data": [[0.3], [0.2]]}"#]);
    assert_eq!(code(&inside), 0);
    let v: serde_json::Value = serde_json::from_slice(&inside.stdout).unwrap();
    assert_eq!(v["in_support"], true);
    assert!(v["logpdf"].as_f64().unwrap().is_finite());

    let outside = run(&["pdf", "--params", PEARSON, "--point", r#"{"beta": 1, "rows": 2, "cols": 1, "data": [[0.9], [0.9]]}"#]);
    assert_eq!(code(&outside), 0);
    let v: serde_json::Value = serde_json::from_slice(&outside.stdout).unwrap();
    assert_eq!(v["in_support"], false);
    assert!(v["logpdf"].is_null());
}

#[test]
fn flags_fill_in_params() {
    let out = run(&[
        "pdf",
        "--family",
        "riesz",
        "--variant",
        "II",
        "--beta",
        "2",
        "--params",
        r#"{"m": 1, "a": 2.5, "kappa": [0.5]}"#,
        "--point",
        r#"{"beta": 2, "rows": 1, "cols": 1, "data": [[1.5, 0.0]]}"#,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn parameter_errors_exit_one() {
    let bad = r#"{"family": "riesz", "variant": "I", "beta": 1, "m": 1, "a": -1.0}"#;
    let out = run(&["pdf", "--params", bad, "--point", r#"{"beta": 1, "rows": 1, "cols": 1, "data": [[1.0]]}"#]);
    assert_eq!(code(&out), 1);
    let out = run(&["sample", "--params", PEARSON, "--beta", "2"]);
    assert_eq!(code(&out), 1, "conflicting flag");
    let out = run(&["verify", "--suite", "normalization", "--beta", "8"]);
    assert_eq!(code(&out), 1, "octonion matrices");
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn malformed_json_exits_three_and_names_the_path() {
    let out = run(&["sample", "--params", r#"{"family": "riesz", "beta": 1, "m": 1, "a": 2.0, "kappa": [1.0, "x"]}"#]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("kappa"), "{err}");

    let out = run(&["sample", "--params", r#"{"family": "riesz", "beta": 1, "m": 1, "a": 2.0, "colour": 1}"#]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn missing_files_exit_three() {
    let out = run(&["sample", "--params", "/nonexistent/params.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn sample_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    let spec = r#"{"family": "beta_riesz", "variant": "k", "beta": 4, "m": 2, "n": 3, "nu": 5.0, "kappa": [0.5, 0.0], "tau": [0.0, -0.5]}"#;
    for p in [&a, &b] {
        let out = run(&["sample", "--params", spec, "--count", "10", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 10);
    for line in text.lines() {
        let m: MatrixJson = serde_json::from_str(line).unwrap();
        let again = MatrixJson::from_matvar(&m.to_matvar().unwrap());
        assert_eq!(serde_json::to_string(&again).unwrap(), line);
    }

    let out = run(&["pdf", "--params", spec, "--points", a.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["in_support"], true);
    }
}

#[test]
fn verify_writes_a_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "normalization", "--beta", "2,4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Vec<serde_json::Value> = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reports.len(), 60);
    assert!(reports.iter().all(|r| r["pass"] == true && r.get("wall_time_s").is_none()));
}

#[test]
fn tables_write_csv() {
    let out = run(&["tables", "--table", "gamma", "--beta", "2", "--m", "2", "--kappa", "1,0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert!(rows.headers().unwrap().len() >= 2);
    assert_eq!(rows.records().count(), 11);
    for t in ["pochhammer", "beta", "stiefel"] {
        assert_eq!(code(&run(&["tables", "--table", t])), 0, "{t}");
    }
}
