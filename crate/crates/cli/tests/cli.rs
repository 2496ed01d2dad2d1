//! End-to-end tests of the experiment runner binary.

use std::path::Path;
use std::process::Command;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_holoframe")
}

fn run(config: &str, out: &Path) -> std::process::Output {
    let cfg_path = out.join("config.json");
    std::fs::write(&cfg_path, config).unwrap();
    Command::new(binary())
        .arg("run")
        .arg(&cfg_path)
        .arg("--out")
        .arg(out)
        .arg("--quiet")
        .output()
        .unwrap()
}

fn report(out: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(out.join("report.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

const FOCK_CONFIG: &str = r#"{
  "experiment": "fock_frame",
  "parameters": { "gamma": 1.0, "alpha": 1.0, "beta": 1.0, "radius": 8.0, "degree": 8 }
}"#;

#[test]
fn fock_frame_reports_positive_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(FOCK_CONFIG, dir.path());
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let rep = report(dir.path());
    assert_eq!(rep["schema_version"], 1);
    assert!(rep["outputs"]["lower"].as_f64().unwrap() > 0.0);
    assert!(dir.path().join("meta.json").exists());
}

#[test]
fn identical_configs_produce_byte_identical_reports() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    assert!(run(FOCK_CONFIG, d1.path()).status.success());
    assert!(run(FOCK_CONFIG, d2.path()).status.success());
    let r1 = std::fs::read(d1.path().join("report.json")).unwrap();
    let r2 = std::fs::read(d2.path().join("report.json")).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn config_echo_reparses_identically() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(FOCK_CONFIG, dir.path()).status.success());
    let rep = report(dir.path());
    let original: serde_json::Value = serde_json::from_str(FOCK_CONFIG).unwrap();
    assert_eq!(rep["config"], original);
}

#[test]
fn negative_degree_fails_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = r#"{
      "experiment": "fock_frame",
      "parameters": { "gamma": 1.0, "alpha": 1.0, "beta": 1.0, "radius": 8.0, "degree": -2 }
    }"#;
    let output = run(bad, dir.path());
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("degree"), "stderr should name the field: {stderr}");
}

#[test]
fn dirichlet_echoes_ridge_and_residual() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{
      "experiment": "dirichlet",
      "parameters": {
        "exponent": [0.5, 0.0], "taylor_degree": 24, "freq_n_max": 2,
        "grid_radius": 1.5, "ridge": 1e-10, "decay_b": 2.0
      }
    }"#;
    let output = run(cfg, dir.path());
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let rep = report(dir.path());
    assert_eq!(rep["outputs"]["ridge"].as_f64().unwrap(), 1e-10);
    assert!(rep["outputs"]["residual_sup"].as_f64().unwrap() < 1e-6);
    let csv = std::fs::read_to_string(dir.path().join("coefficients.csv")).unwrap();
    assert!(csv.starts_with("n,m,re,im,abs\n"));
    assert_eq!(csv.lines().count(), 1 + 25);
}

#[test]
fn rank_deficient_experiment_exits_zero_with_failure_in_report() {
    let dir = tempfile::tempdir().unwrap();
    // 5 lattice points cannot determine 9 coefficients: rank-deficient,
    // which is an exploratory outcome rather than a usage error.
    let cfg = r#"{
      "experiment": "sufficiency",
      "parameters": {
        "growth_exponent": 1.0, "alpha": 1.0, "beta": 1.0, "radius": 1.0,
        "n": 1, "m_max": 3, "degree": 8
      }
    }"#;
    let output = run(cfg, dir.path());
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let rep = report(dir.path());
    let outputs = &rep["outputs"];
    assert!(
        outputs["m_found"].is_null() || outputs.get("failure").is_some(),
        "expected no sufficient level or an encoded failure: {outputs}"
    );
}
