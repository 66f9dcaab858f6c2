//! End-to-end tests of the command-line interface.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn qtpaths(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qtpaths"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code(),
    )
}

#[test]
fn r_apply_on_one() {
    // R_(1) . 1 = -e_1 = -p_1
    let (stdout, _, code) = qtpaths(&["r-apply", "--beta", "1", "--input", "1"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["basis"], "p");
    assert_eq!(v["terms"][0]["partition"], serde_json::json!([1]));
    assert_eq!(v["terms"][0]["coeff"]["num"][0][0], "-1");
}

#[test]
fn engines_give_identical_output() {
    let mut outputs = Vec::new();
    for engine in ["paths", "increments", "voa"] {
        let (stdout, _, code) =
            qtpaths(&["r-apply", "--beta", "1,-1,2", "--input", "1", "--engine", engine]);
        assert_eq!(code, Some(0), "engine {engine}");
        outputs.push(stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn q_apply_zero_is_neg_e1() {
    let (stdout, _, code) = qtpaths(&["q-apply", "--alpha", "0", "--input", "1"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["terms"][0]["coeff"]["num"][0][0], "-1");
}

#[test]
fn mac_degree_two() {
    // H_(2) = s_2 + q s_11
    let (stdout, _, code) = qtpaths(&["mac", "--n", "2"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let entry = &v["entries"][0];
    assert_eq!(entry["lambda"], serde_json::json!([2]));
    let terms = entry["htilde"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    // the s_11 coefficient is the monomial q
    let s11 = terms.iter().find(|t| t["partition"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(s11["coeff"]["num"][0], serde_json::json!(["1", 1, 0]));
}

#[test]
fn explicit_rhs_single_entry() {
    // R_(2) . 1 = e_2 = (p_11 - p_2)/2
    let (stdout, _, code) = qtpaths(&["explicit-rhs", "--betas", "2"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
}

#[test]
fn expansion_coefficient() {
    let (stdout, _, code) =
        qtpaths(&["expansion", "--beta", "2", "--lambda", "1,1", "--side", "schur"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["num"][0], serde_json::json!(["1", 0, 0]));
}

#[test]
fn tau_truncation() {
    let (stdout, _, code) = qtpaths(&["--zmax", "1", "tau", "--g1", "1,1", "--g2", "1"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["zmax"], 1);
    let z0 = v["components"][0]["terms"].as_array().unwrap();
    assert_eq!(z0.len(), 1);
    assert_eq!(z0[0]["coeff"]["num"][0][0], "1");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qtpaths"))
        .args(["r-apply", "--beta", "0", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(br#"{"basis":"p","terms":[{"partition":[1],"coeff":1}]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    // D_0 p_1 = (1 - M) p_1 = (q + t - qt) p_1
    let v: Value = serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(v["terms"][0]["partition"], serde_json::json!([1]));
}

#[test]
fn deterministic_output() {
    let (a, _, _) = qtpaths(&["mac", "--n", "3"]);
    let (b, _, _) = qtpaths(&["mac", "--n", "3"]);
    assert_eq!(a, b);
    assert!(!a.contains('\n') || a.trim_end().lines().count() == 1);
}

#[test]
fn verify_suite_passes_and_reports() {
    let (stdout, _, code) = qtpaths(&["verify", "soundness"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["suites"][0]["checks"].as_array().unwrap().len() >= 5);
    // per-identity timing is reported
    assert!(v["suites"][0]["checks"][0]["millis"].is_number());
}

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = qtpaths(&["verify", "no-such-suite"]);
    assert_eq!(code, Some(2));
    let (_, stderr, code) = qtpaths(&["r-apply", "--beta", "x"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("error"));
    let (_, _, code) = qtpaths(&["r-apply", "--beta", "1", "--input", "{bad json"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = qtpaths(&["nonsense"]);
    assert_eq!(code, Some(2));
}
