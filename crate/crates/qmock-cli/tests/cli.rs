//! End-to-end checks of the qmock binary: expansion output, report shape,
//! exit codes, and JSON round-tripping.

use std::process::{Command, Output};

fn qmock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmock"))
        .args(args)
        .env_remove("QMOCK_ROW_CAP")
        .output()
        .expect("binary runs")
}

#[test]
fn expand_omega() {
    let out = qmock(&["expand", "--ids", "omega", "--order", "3"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "1 + 2*q + 3*q^2 + 4*q^3"
    );
}

#[test]
fn expand_double_sum_matches_classical_closed_form() {
    let lhs = qmock(&["expand", "--ids", "M5.double_sum", "--order", "2"]);
    let rhs = qmock(&["expand", "--ids", "M5.classical", "--order", "2"]);
    assert!(lhs.status.success() && rhs.status.success());
    assert_eq!(lhs.stdout, rhs.stdout);
}

#[test]
fn expand_unknown_id_exits_2() {
    let out = qmock(&["expand", "--ids", "nosuch", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown id"));
}

#[test]
fn verify_single_identity_json() {
    let out = qmock(&[
        "verify",
        "--set",
        "identities",
        "--ids",
        "M5",
        "--order",
        "25",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(doc["summary"]["mismatch"], 0);
    assert_eq!(doc["summary"]["error"], 0);
    // bit-identical round trip
    let report: qmock_core::report::VerificationReport =
        serde_json::from_str(&text).expect("schema");
    let re = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(re.trim(), text.trim());
}

#[test]
fn pair_check_filtered() {
    let out = qmock(&["pair-check", "--ids", "bk,unit", "--order", "30", "--nmax", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("summary: 2 equal, 0 mismatch, 0 error"));
}

#[test]
fn derive_bad_chain_exits_2() {
    let out = qmock(&["derive", "--chain", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_slater_chain() {
    let out = qmock(&[
        "derive",
        "--chain",
        "slater-to-corollaries",
        "--order",
        "25",
        "--nmax",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("summary: 6 equal, 0 mismatch, 0 error"));
}
