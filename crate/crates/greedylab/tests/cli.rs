//! End-to-end checks of the `greedylab` binary: exit statuses, report files,
//! and the config echo.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_greedylab"))
}

#[test]
fn norm_command_prints_the_schreier_prefix_norm() {
    let dir = tempfile::tempdir().unwrap();
    let vector = dir.path().join("x.csv");
    std::fs::write(&vector, "index,value\n1,1\n2,1\n3,1\n4,1\n").unwrap();
    let output = bin()
        .args(["--space-json", r#"{"kind": "Schreier"}"#, "norm", "--input"])
        .arg(&vector)
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "2");
}

#[test]
fn unreadable_input_exits_with_two() {
    let output = bin()
        .args(["--space-json", r#"{"kind": "Schreier"}"#, "norm", "--input", "/nonexistent/x.csv"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn malformed_space_json_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let vector = dir.path().join("x.csv");
    std::fs::write(&vector, "1,1\n").unwrap();
    let output = bin()
        .args(["--space-json", r#"{"kind": "NoSuchSpace"}"#, "norm", "--input"])
        .arg(&vector)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn invalid_space_params_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let vector = dir.path().join("x.csv");
    std::fs::write(&vector, "1,1\n").unwrap();
    let output = bin()
        .args(["--space-json", r#"{"kind": "Lp", "params": {"p": 0.5}}"#, "norm", "--input"])
        .arg(&vector)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn suite_run_writes_a_report_with_the_config_echo() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("space.json");
    std::fs::write(&space, r#"{"kind": "Lp", "params": {"p": 2.0}}"#).unwrap();
    let out = dir.path().join("report.json");
    let output = bin()
        .arg("--space")
        .arg(&space)
        .arg("--out")
        .arg(&out)
        .args(["suite", "disjoint_democracy", "--max-size", "3", "--horizon", "8"])
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["config"]["space"]["kind"], "Lp");
    assert_eq!(report["config"]["seed"], 0);
    assert_eq!(report["result"]["overall"], "pass");
}

#[test]
fn csv_format_flattens_suite_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let output = bin()
        .args(["--space-json", r#"{"kind": "Lp", "params": {"p": 2.0}}"#, "--format", "csv"])
        .arg("--out")
        .arg(&out)
        .args(["suite", "disjoint_democracy", "--max-size", "3", "--horizon", "8"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("suite_id,statement_id,status"));
    assert!(text.contains("full_democracy_bounded_by_disjoint_squared"));
}

#[test]
fn constants_command_reports_the_estimate() {
    let output = bin()
        .args([
            "--space-json",
            r#"{"kind": "Lp", "params": {"p": 2.0}}"#,
            "constants",
            "democracy",
            "--max-size",
            "3",
            "--horizon",
            "8",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("democracy estimate = 1"), "stdout: {stdout}");
}

#[test]
fn functional_command_needs_m() {
    let dir = tempfile::tempdir().unwrap();
    let vector = dir.path().join("x.csv");
    std::fs::write(&vector, "1,1\n").unwrap();
    let output = bin()
        .args(["--space-json", r#"{"kind": "Lp", "params": {"p": 2.0}}"#, "functional", "sigma", "--input"])
        .arg(&vector)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}
