//! End-to-end tests of the `lof` binary: output shapes and exit codes.

use std::io::Write;
use std::process::Command;

fn lof(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lof"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn eval_prints_residue_and_pair() {
    let (code, stdout, _) = lof(&["eval", "[[[[[ ]]]]]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1 = {(),}\n");
}

#[test]
fn eval_accepts_assignments_and_methods() {
    let (code, stdout, _) = lof(&["eval", "[X] Y", "--assign", "X=3", "--assign", "Y=1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1 = {(),}\n");
    let (code, stdout, _) = lof(&[
        "eval",
        "[[{(),()}] [[[{(),}]]]]",
        "--method",
        "nms",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0 = {,}\n");
    let (code, stdout, _) = lof(&[
        "eval",
        "((P) Q)",
        "--calculus",
        "pa",
        "--assign",
        "P=marked",
        "--assign",
        "Q=unmarked",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "marked\n");
    let (code, stdout, _) = lof(&[
        "eval",
        "(X) X",
        "--calculus",
        "rot:3",
        "--assign",
        "X=1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "(1,1,0)\n");
}

#[test]
fn parse_errors_exit_2_with_a_byte_offset() {
    let (code, _, stderr) = lof(&["eval", "(A"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte 2"), "stderr: {stderr}");
    let (code, _, stderr) = lof(&["eval", "{[],}"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte 0"), "stderr: {stderr}");
}

#[test]
fn unbound_variables_exit_2() {
    let (code, _, stderr) = lof(&["eval", "X Y", "--assign", "X=2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("Y"), "stderr: {stderr}");
}

#[test]
fn equiv_reports_countermodels_and_exits_1() {
    let (code, stdout, _) = lof(&["equiv", "((A) A)", "", "--calculus", "wf"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("A = 1 = {(),}"), "stdout: {stdout}");
    let (code, stdout, _) = lof(&["equiv", "((A) A)", "", "--calculus", "pa"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "equivalent\n");
    let (code, stdout, _) = lof(&["equiv", "[A]", "A", "--calculus", "bf"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("A = 0 = {,}"), "stdout: {stdout}");
}

#[test]
fn tables_render_in_both_forms() {
    let (code, stdout, _) = lof(&["table", "oplus"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("oplus | 0 1 3 2\n"), "stdout: {stdout}");
    let (code, stdout, _) = lof(&["table", "or", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("json");
    assert_eq!(doc["name"], "or");
    assert_eq!(doc["order"], serde_json::json!([1, 0, 2, 3]));
    assert_eq!(doc["entries"][1], serde_json::json!([0, 0, 3, 3]));
    let (code, _, _) = lof(&["table", "xor"]);
    assert_eq!(code, 2);
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write");
    f
}

const POSITION_PROOF: &str = r#"{
  "calculus": "pa",
  "start": "((A) A)",
  "end": "",
  "steps": [
    {"rule": "B3", "path": [0], "dir": "rl", "subst": {"A": "", "B": "A"}},
    {"rule": "B1", "path": [0], "dir": "lr", "subst": {"A": "A"}},
    {"rule": "B2", "path": [], "dir": "lr", "subst": {"A": ""}}
  ]
}"#;

#[test]
fn check_proof_accepts_a_valid_demonstration() {
    let f = write_temp(POSITION_PROOF);
    let (code, stdout, _) = lof(&["check-proof", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("valid: 3 steps"), "stdout: {stdout}");
}

#[test]
fn check_proof_rejects_a_mutated_demonstration_at_the_right_step() {
    let mut doc: serde_json::Value = serde_json::from_str(POSITION_PROOF).unwrap();
    doc["steps"].as_array_mut().unwrap().remove(1);
    let f = write_temp(&doc.to_string());
    let (code, stdout, _) = lof(&["check-proof", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.starts_with("invalid at step 2"), "stdout: {stdout}");
}

#[test]
fn check_proof_rejects_malformed_json_with_exit_2() {
    let f = write_temp("{ not json");
    let (code, _, stderr) = lof(&["check-proof", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bad demonstration"), "stderr: {stderr}");
}

#[test]
fn search_proof_output_replays_through_check_proof() {
    let (code, stdout, _) = lof(&["search-proof", "[] [[[]]]", "()", "--depth", "4", "--basis", "bf"]);
    assert_eq!(code, 0);
    let f = write_temp(&stdout);
    let (code, stdout, _) = lof(&["check-proof", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("valid"), "stdout: {stdout}");
}

#[test]
fn search_proof_reports_absence_with_exit_1() {
    let (code, stdout, _) = lof(&["search-proof", "A", "(A)", "--depth", "4", "--basis", "pa"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("no demonstration"), "stdout: {stdout}");
}

#[test]
fn verify_suites_pass_and_serialize() {
    for suite in [
        "pa-consequences",
        "bf-consequences",
        "wf",
        "belnap",
        "bilattice-tables",
        "groups",
        "rotation",
        "braid",
        "quaternions",
    ] {
        let (code, stdout, _) = lof(&["verify", suite]);
        assert_eq!(code, 0, "suite {suite}: {stdout}");
        assert!(stdout.contains("checks pass"), "suite {suite}: {stdout}");
        assert!(!stdout.contains("FAIL"), "suite {suite}: {stdout}");
    }
    let (code, stdout, _) = lof(&["verify", "rotation", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("json");
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["suite"], "rotation");
    assert!(doc["checks"].as_array().unwrap().len() >= 7);
}

#[test]
fn verify_all_is_the_acceptance_gate() {
    let (code, stdout, _) = lof(&["verify", "all"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("suite all:"), "{stdout}");
    assert!(!stdout.contains("FAIL"), "{stdout}");
}

#[test]
fn unknown_flags_exit_2() {
    let (code, _, _) = lof(&["eval", "()", "--frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = lof(&["verify", "bogus"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"), "stderr: {stderr}");
}

#[test]
fn nms_method_is_rejected_outside_bf() {
    let (code, _, stderr) = lof(&["eval", "()", "--calculus", "pa", "--method", "nms"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bf calculus"), "stderr: {stderr}");
}
