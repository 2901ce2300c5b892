use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycle-ekr")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn compute_prints_counts_as_strings() {
    let out = run(&["compute", "f", "--n", "30"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["value"], "97581073836835777732377428235481");
}

#[test]
fn negative_derangement_argument_is_a_domain_error() {
    let out = run(&["compute", "f", "--n", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "domain");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
}

#[test]
fn oracle_past_the_bound_is_a_resource_error() {
    let out = run(&["oracle", "--n", "7", "--t", "1", "--mode", "trivial"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "resource-guard");
}

#[test]
fn node_budget_is_enforced() {
    let out = run(&["--budget-nodes", "10", "oracle", "--n", "5", "--t", "1", "--mode", "nontrivial"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_reports_maximum_and_witness() {
    let out = run(&["oracle", "--n", "4", "--t", "1", "--mode", "nontrivial"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["maximum"], "4");
    assert_eq!(v["witness"].as_array().map(Vec::len), Some(4));
}

#[test]
fn verify_exit_code_reflects_failures() {
    assert_eq!(run(&["verify", "partition-identity"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "ratio-bound"]).status.code(), Some(1));
}

#[test]
fn table_is_deterministic_across_thread_counts() {
    let args = |threads| ["--threads", threads, "table", "--n-range", "3..9", "--t-range", "1..2"];
    let a = run(&args("1"));
    let b = run(&args("4"));
    let c = run(&args("4"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("n,t,ell_star,r_star,m,nu,"));
}

#[test]
fn compress_reaches_a_compressed_family() {
    let out = run(&["compress", "--n", "4", "--t", "1", "--family", "(1)(2)(3 4);(1)(2 3 4)"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["final_size"], 2);
    assert_eq!(v["output"][0], "(1)(2)(3)(4)");
}

#[test]
fn malformed_family_is_rejected() {
    let out = run(&["compress", "--n", "4", "--t", "1", "--family", "(1 1)(2)(3)(4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].is_string());
}
