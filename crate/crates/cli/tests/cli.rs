use std::process::{Command, Output};

use serde_json::Value;

const EXTERIOR: [&str; 8] = ["--q11", "1/2", "--q12", "0/1", "--q21", "0/1", "--q22", "1/2"];
const A2: [&str; 8] = ["--q11", "1/3", "--q12", "2/3", "--q21", "0/1", "--q22", "1/3"];

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with(cmd: &str, scalars: &[&str], extra: &[&str]) -> Output {
    let mut args = vec![cmd];
    args.extend_from_slice(scalars);
    args.extend_from_slice(extra);
    nichols(&args)
}

#[test]
fn classify_exterior_algebra() {
    let o = with("classify", &EXTERIOR, &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["type"], serde_json::json!([[1, 1]]));
    assert_eq!(v["dimension"], 4);
    for key in ["type", "tree", "pbw", "dimension", "relations", "verified_up_to", "admissibility"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn keys_present_without_a_tree() {
    let o = with("classify", &["--q11", "1/5", "--q12", "1/5", "--q21", "0/1", "--q22", "1/3"], &["--weight-cap", "12"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tree"], Value::Null);
    assert_eq!(v["admissibility"], Value::Null);
    assert!(v["dimension"].is_string());
}

#[test]
fn dims_of_a2() {
    let o = with("dims", &A2, &["--degree-cap", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[1,2,4,4,5,4,4,2,1]");
}

#[test]
fn tree_of_exterior_algebra() {
    let o = with("tree", &EXTERIOR, &["--format", "text"]);
    assert_eq!(stdout(&o).trim(), "L");
}

#[test]
fn verify_exit_status() {
    assert_eq!(with("verify", &A2, &["--tree", "(L L)"]).status.code(), Some(0));
    let o = with("verify", &A2, &["--tree", "L"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed_at"], 2);
}

#[test]
fn input_errors_exit_with_two() {
    let o = with("dims", &["--q11", "1/x", "--q12", "0/1", "--q21", "0/1", "--q22", "1/2"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--q11") && err.contains("<k>/<N>"), "{err}");
    assert_eq!(with("verify", &A2, &["--tree", "(L"]).status.code(), Some(2));
    assert_eq!(with("dims", &A2, &["--degree-cap", "0"]).status.code(), Some(2));
    assert_eq!(nichols(&["dims", "--q11", "1/2"]).status.code(), Some(2));
}

#[test]
fn negative_scalars_parse() {
    let o = with("dims", &["--q11", "-0/1", "--q12", "0/1", "--q21", "0/1", "--q22", "-0/1"], &["--degree-cap", "3"]);
    assert_eq!(stdout(&o).trim(), "[1,2,1,0]");
}

#[test]
fn fixture_matrix_passes() {
    let o = nichols(&["fixtures", "--format", "text"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 33);
}
