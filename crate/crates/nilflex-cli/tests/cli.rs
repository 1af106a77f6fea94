//! End-to-end checks of the command-line interface.

use std::process::{Command, Output};

fn nilflex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilflex"))
        .args(args)
        .env_remove("NILFLEX_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn table_csv_has_fixed_header_and_all_rows() {
    let out = nilflex(&["table", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "structure,b1,b2,s,h4,h5,moduli,flexible"
    );
    assert_eq!(text.lines().count(), 35); // header + 34 rows
    assert!(text.contains("\"(0,0,12,13,23,14-25)\",2,4,4,\"2,3,4\",0,8,true"));
}

#[test]
fn table_json_is_schema_versioned() {
    let out = nilflex(&["table", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["entries"].as_array().unwrap().len(), 34);
}

#[test]
fn table_writes_to_file() {
    let dir = std::env::temp_dir().join("nilflex-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.md");
    let out = nilflex(&["table", "--format", "md", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("| b1 | b2 |"));
    std::fs::remove_file(path).ok();
}

#[test]
fn unknown_format_fails() {
    let out = nilflex(&["table", "--format", "yaml"]);
    assert!(!out.status.success());
}

#[test]
fn analyze_reports_non_symplectic_rows() {
    let out = nilflex(&["analyze", "(0,0,12,13,14+23,34+52)"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("symplectic:  none"));
}

#[test]
fn analyze_flexible_row_finds_certificate() {
    let out = nilflex(&["analyze", "(0,0,12,13,23,14-25)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("h4 values:   [2, 3, 4]"));
    assert!(text.contains("segment check passed"));
}

#[test]
fn analyze_json_and_seed_determinism() {
    let a = nilflex(&["analyze", "(0,0,0,12,14,15+23+24)", "--json", "--seed", "7"]);
    let b = nilflex(&["analyze", "(0,0,0,12,14,15+23+24)", "--json", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let value: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(value["h5_values"], serde_json::json!([0, 2]));
}

#[test]
fn seed_env_variable_is_honored() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_nilflex"))
        .args(["analyze", "(0,0,12,13,23,14)", "--json"])
        .env("NILFLEX_SEED", "7")
        .output()
        .unwrap();
    let with_flag = nilflex(&["analyze", "(0,0,12,13,23,14)", "--json", "--seed", "7"]);
    assert_eq!(stdout(&with_env), stdout(&with_flag));
}

#[test]
fn harmonic_profile_on_torus() {
    let out = nilflex(&["harmonic", "(0,0)", "--omega", "A=2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("Lefschetz type: true"));
    assert!(text.contains("identity suite: all"));
}

#[test]
fn harmonic_rejects_degenerate_points() {
    let out = nilflex(&["harmonic", "(0,0,12,13,23,14-25)", "--omega", "A=1,B=0,C=0,D=0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not symplectic"));
}

#[test]
fn product_of_kt_and_circle_squared() {
    let out = nilflex(&[
        "product",
        "(0,0,12,0)",
        "(0,0)",
        "--omega1",
        "A=1,B=0,C=0,D=1",
        "--omega2",
        "A=1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("h_5 = 4 (formula 4)"));
    assert!(text.contains("h_4 = 9 (formula 9)"));
}

#[test]
fn malformed_spec_exits_nonzero() {
    let out = nilflex(&["analyze", "(0,0,xy)"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = nilflex(&["verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verification: ok"));
    assert_eq!(text.matches("ok   (").count(), 34);
}
