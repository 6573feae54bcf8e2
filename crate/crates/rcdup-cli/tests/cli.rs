//! End-to-end tests of the `rcdup` binary: output formats, exit-code
//! discipline, and reproducibility.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn rcdup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcdup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("rcdup-test-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn express_check_reports_non_expressive_with_exit_zero() {
    let output = rcdup(&["express", "check", "--q", "4", "--k", "2", "--seed-word", "0123"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("not fully expressive"));
    assert!(text.contains("rule: even-k"));
    assert!(text.starts_with("# rcdup express check"));
}

#[test]
fn express_check_reports_expressive_seed() {
    let output = rcdup(&["express", "check", "--q", "2", "--k", "2", "--seed-word", "00"]);
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("fully expressive"));
}

#[test]
fn express_derive_emits_replayable_json() {
    let output = rcdup(&[
        "express", "derive", "--q", "2", "--k", "2", "--seed-word", "00", "--target", "010",
    ]);
    assert!(output.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(document["derivation"]["seed"], "00");
    assert_eq!(document["derivation"]["k"], 2);
    let result = document["result"].as_str().unwrap();
    assert!(result.ends_with("010"));
    assert!(!document["derivation"]["events"].as_array().unwrap().is_empty());
}

#[test]
fn capacity_growth_emits_expected_rows() {
    let output = rcdup(&["capacity", "growth", "--n-max", "6"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# rcdup capacity growth"));
    assert!(lines[0].contains("columns=n,count,rate"));
    assert!(lines[1].starts_with("2,1,"));
    assert!(lines[2].starts_with("4,1,"));
    assert!(lines[3].starts_with("6,3,"));
}

#[test]
fn capacity_irr_lists_all_words() {
    let output = rcdup(&["capacity", "irr", "--n", "4"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let words: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(words.len(), 12);
    for forbidden in ["0011", "0101", "1010", "1100"] {
        assert!(!words.contains(&forbidden));
    }
}

#[test]
fn capacity_witness_rejects_reducible_words_with_exit_one() {
    let output = rcdup(&["capacity", "witness", "--u", "0011"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("not irreducible"));
}

#[test]
fn simulate_is_byte_identical_per_seed() {
    let args = ["simulate", "--steps", "200", "--seed", "11"];
    let first = rcdup(&args);
    let second = rcdup(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let other = rcdup(&["simulate", "--steps", "200", "--seed", "12"]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn simulate_header_echoes_config() {
    let output = rcdup(&["simulate", "--steps", "10", "--seed", "3", "--record", "0,5,10"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let header = text.lines().next().unwrap();
    assert!(header.contains("seed=3"));
    assert!(header.contains("rng=chacha8"));
    assert!(header.contains("columns=n,fr00,fr01,fr10,fr11,fr1_deriv"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn entropy_bound_of_limit_vector_is_zero() {
    let output = rcdup(&["entropy-bound", "--freqs", "0,0.5,0.5,0"]);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output).lines().nth(1), Some("0"));
}

#[test]
fn entropy_bound_rejects_inadmissible_vectors() {
    let output = rcdup(&["entropy-bound", "--freqs", "0.5,0.5,0,0"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn certify_dedup_counterexample_is_a_finding_not_an_error() {
    let code = temp_file("code.txt", "00110\n00011\n");
    let output = rcdup(&[
        "ecc", "certify", "--code", code.to_str().unwrap(),
        "--k", "2", "--t", "1", "--mode", "dedup",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("result=false"));
    assert!(text.contains("common=000"));
    fs::remove_file(code).ok();
}

#[test]
fn certify_dup_of_the_same_code_passes() {
    let code = temp_file("code2.txt", "00110\n00011\n");
    let output = rcdup(&[
        "ecc", "certify", "--code", code.to_str().unwrap(),
        "--k", "2", "--t", "1", "--mode", "dup", "--format", "json",
    ]);
    assert!(output.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(document["result"], true);
    assert!(document["counterexample"].is_null());
    fs::remove_file(code).ok();
}

#[test]
fn decode_restores_the_codeword() {
    let spec = temp_file(
        "spec.json",
        r#"{"q":4,"n":4,"k":1,"component":{"kind":"vt","a":0}}"#,
    );
    let output = rcdup(&["ecc", "decode", "--spec", spec.to_str().unwrap(), "--word", "21030"]);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output).lines().nth(1), Some("2130"));
    fs::remove_file(spec).ok();
}

#[test]
fn decode_rejects_wrong_length_with_exit_one() {
    let spec = temp_file(
        "spec2.json",
        r#"{"q":4,"n":4,"k":1,"component":{"kind":"vt","a":0}}"#,
    );
    let output = rcdup(&["ecc", "decode", "--spec", spec.to_str().unwrap(), "--word", "2103"]);
    assert_eq!(output.status.code(), Some(1));
    fs::remove_file(spec).ok();
}

#[test]
fn redundancy_matches_across_alphabets() {
    let spec2 = temp_file(
        "spec-q2.json",
        r#"{"q":2,"n":4,"k":1,"component":{"kind":"vt","a":0}}"#,
    );
    let spec4 = temp_file(
        "spec-q4.json",
        r#"{"q":4,"n":4,"k":1,"component":{"kind":"vt","a":0}}"#,
    );
    let out2 = rcdup(&["ecc", "redundancy", "--spec", spec2.to_str().unwrap()]);
    let out4 = rcdup(&["ecc", "redundancy", "--spec", spec4.to_str().unwrap()]);
    assert!(out2.status.success() && out4.status.success());
    let value2 = stdout_of(&out2).lines().nth(1).unwrap().to_string();
    let value4 = stdout_of(&out4).lines().nth(1).unwrap().to_string();
    assert_eq!(value2, "2");
    assert_eq!(value2, value4);
    fs::remove_file(spec2).ok();
    fs::remove_file(spec4).ok();
}

#[test]
fn build_emits_a_certified_component_code() {
    let output = rcdup(&["ecc", "build", "--n", "4", "--k", "3"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("kind=brute-burst"));
    assert_eq!(lines.next(), Some("0000"));
}

#[test]
fn usage_errors_exit_two() {
    let output = rcdup(&["no-such-command"]);
    assert_eq!(output.status.code(), Some(2));
    let output = rcdup(&["express", "check", "--q", "4", "--k", "2"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_file() {
    let mut path = std::env::temp_dir();
    path.push(format!("rcdup-test-{}-growth.csv", std::process::id()));
    let output = rcdup(&[
        "capacity", "growth", "--n-max", "4",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let written = fs::read_to_string(&path).unwrap();
    assert!(written.contains("2,1,"));
    fs::remove_file(path).ok();
}
