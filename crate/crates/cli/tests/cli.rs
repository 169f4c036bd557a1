//! Contract tests for the `kummer` binary: documented invocations, exit
//! codes, and the JSON envelope shape.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn parse_envelope(output: &Output) -> Value {
    serde_json::from_str(&stdout(output)).expect("stdout is JSON")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("kummer-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn euler_n2_prints_24() {
    let output = kummer(&["euler", "--n", "2"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout(&output).trim(), "24");
}

#[test]
fn certify_n3_json_is_certified() {
    let output = kummer(&["certify", "--n", "3", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let envelope = parse_envelope(&output);
    assert_eq!(envelope["verdict"], "certified");
    assert_eq!(envelope["result"]["total_elements"], 162);
}

#[test]
fn lefschetz_example_values() {
    let output = kummer(&["lefschetz", "--n", "4", "--a", "1,0,0,0"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("L(a) = 64"));
    assert!(text.contains("chi_top = 448"));
    assert!(text.contains("cohomologically_trivial_possible = false"));
}

#[test]
fn json_envelope_round_trips_byte_identically() {
    for args in [
        vec!["euler", "--n", "5", "--format", "json"],
        vec!["lefschetz", "--n", "4", "--a", "2,0,0,0", "--format", "json"],
        vec!["kernel-table", "--n", "4", "--format", "json"],
        vec!["tau", "--n", "3", "--check-invariance", "--format", "json"],
        vec!["certify", "--n", "3", "--format", "json"],
    ] {
        let output = kummer(&args);
        assert_eq!(exit_code(&output), 0, "args: {args:?}");
        let printed = stdout(&output);
        let parsed: Value = serde_json::from_str(&printed).expect("valid JSON");
        let reprinted = serde_json::to_string_pretty(&parsed).expect("serializes");
        assert_eq!(printed.trim_end(), reprinted, "args: {args:?}");
    }
}

#[test]
fn json_envelope_schema_fields() {
    let output = kummer(&["kernel-table", "--n", "3", "--format", "json"]);
    let envelope = parse_envelope(&output);
    assert!(envelope["assumptions"].is_array());
    assert!(envelope["assumptions"]
        .as_array()
        .unwrap()
        .iter()
        .all(Value::is_string));
    assert!(envelope["command"].is_string());
    assert!(envelope["inputs"].is_object());
    assert!(envelope["result"].is_object());
    let verdict = envelope["verdict"].as_str().unwrap();
    assert!(["certified", "failed", "n/a"].contains(&verdict));
}

#[test]
fn unknown_subcommand_is_exit_2() {
    let output = kummer(&["frobnicate"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn malformed_element_is_exit_2_with_diagnostic() {
    let output = kummer(&["lefschetz", "--n", "4", "--a", "1,2,x,0"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("malformed element"));

    let output = kummer(&["tau", "--n", "3", "--pullback", "1,2,3"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn identity_translation_is_exit_2() {
    let output = kummer(&["lefschetz", "--n", "4", "--a", "0,0,0,0"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("identity"));
}

#[test]
fn iota_suffix_rejected_by_lefschetz() {
    let output = kummer(&["lefschetz", "--n", "4", "--a", "1,0,0,0,iota"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("pure translation"));
}

#[test]
fn zero_level_is_exit_2() {
    let output = kummer(&["euler", "--n", "0"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn low_level_scans_are_exit_2_without_flag() {
    let output = kummer(&["certify", "--n", "2"]);
    assert_eq!(exit_code(&output), 2);
    let output = kummer(&["kernel-table", "--n", "2"]);
    assert_eq!(exit_code(&output), 2);
    // the K3 anchor is admitted behind the explicit flag
    let output = kummer(&["kernel-table", "--n", "2", "--allow-k3"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("chi_top = 24"));
}

#[test]
fn scan_bound_requires_explicit_raise() {
    let output = kummer(&["certify", "--n", "60"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("--max-n-unsafe"));
    let output = kummer(&["kernel-table", "--n", "60", "--max-n-unsafe", "60"]);
    assert_eq!(exit_code(&output), 0);
}

#[test]
fn injected_faults_reach_exit_1() {
    let output = kummer(&["certify", "--n", "3", "--inject-fault", "translation"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout(&output).contains("verdict: failed"));
    assert!(stdout(&output).contains("counterexample"));

    let output = kummer(&[
        "certify",
        "--n",
        "3",
        "--inject-fault",
        "inversion",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&output), 1);
    let envelope = parse_envelope(&output);
    assert_eq!(envelope["verdict"], "failed");
    assert!(envelope["result"]["counterexample"].is_string());
}

#[test]
fn tau_pullback_by_translation_keeps_form() {
    let output = kummer(&[
        "tau", "--n", "4", "--pullback", "1,2,0,3", "--format", "json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let envelope = parse_envelope(&output);
    assert_eq!(envelope["result"]["pullback"]["equals_original"], true);
    assert_eq!(envelope["result"]["pullback"]["matches_expected_action"], true);
    assert_eq!(envelope["result"]["witness_coefficient"], "-1");
}

#[test]
fn symplectic_standard_form_run() {
    let path = write_temp("j4", "4 4\n0 0 1 0\n0 0 0 1\n-1 0 0 0\n0 -1 0 0\n");
    let output = kummer(&["symplectic", "--matrix", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("order = 4"));
    assert!(text.contains("fixed_dimension = 0"));
    assert!(text.contains("verdict: certified"));
}

#[test]
fn symplectic_custom_form_block() {
    // identity map, custom 2x2 form scaled by 3
    let path = write_temp("custom", "2 2\n1 0\n0 1\n2 2\n0 3\n-3 0\n");
    let output = kummer(&["symplectic", "--matrix", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let envelope = parse_envelope(&output);
    assert_eq!(envelope["result"]["fixed_dimension"], 2);
    assert_eq!(envelope["result"]["gram"]["entries"][1], "3");
}

#[test]
fn symplectic_rejections_are_exit_2() {
    // not symplectic
    let path = write_temp("stretch", "2 2\n2 0\n0 1\n");
    let output = kummer(&["symplectic", "--matrix", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("does not preserve"));

    // infinite order
    let path = write_temp("shear", "2 2\n1 1\n0 1\n");
    let output = kummer(&["symplectic", "--matrix", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("no finite order"));

    // malformed file
    let path = write_temp("short", "2 2\n1 0 0\n");
    let output = kummer(&["symplectic", "--matrix", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);

    // odd dimension has no standard form
    let path = write_temp("odd", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    let output = kummer(&["symplectic", "--matrix", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);

    // missing file
    let output = kummer(&["symplectic", "--matrix", "/nonexistent/m.txt"]);
    assert_eq!(exit_code(&output), 2);
}
