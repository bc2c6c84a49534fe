use std::process::Command;

use serde_json::Value;

fn kappa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kappa")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn eval(expr: &str) -> String {
    let (code, out, err) = kappa(&["eval", expr]);
    assert_eq!(code, 0, "{}: {}", expr, err);
    out.trim_end().to_string()
}

#[test]
fn eval_examples() {
    assert_eq!(eval("comm(v[0], v[1])"), "(i/k)*v[1]");
    assert_eq!(eval("pair(P[1], v[1]*v[0])"), "1/k");
    assert_eq!(eval("eps(v[2])"), "0");
    assert_eq!(eval("x[1]*x[0]"), "x[0]*x[1] - (i/k)*x[1]");
    assert_eq!(eval("hat(M[1,0], x[1])"), "i*x[0]");
    assert_eq!(eval("dd0(x[0]^2)"), "2*x[0]");
    assert_eq!(eval("A^-1*A"), "1");
    assert_eq!(eval("pair(P[1], v[1])"), "i");
    assert_eq!(eval("M[0,1] + M[1,0]"), "0");
}

#[test]
fn eval_errors_are_usage_errors() {
    let (code, _, err) = kappa(&["eval", "comm(v[0], (v[1]"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 16"), "{}", err);
    let (code, _, err) = kappa(&["eval", "pair(v[1], P[1])"]);
    assert_eq!(code, 2);
    assert!(err.contains("type error"), "{}", err);
    let (code, _, _) = kappa(&["eval", "v[4]"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(kappa(&["verify", "algebra-jacobi"]).0, 0);
    assert_eq!(kappa(&["verify", "algebra-jacobi", "--corrupt", "demo"]).0, 1);
    assert_eq!(kappa(&["verify", "no-such-suite"]).0, 2);
    assert_eq!(kappa(&["verify", "kg", "--corrupt", "demo"]).0, 2);
    assert_eq!(kappa(&["verify", "kg", "--format", "xml"]).0, 2);
    let (code, out, _) = kappa(&["--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn json_and_text_list_the_same_checks() {
    let (_, json, _) = kappa(&["verify", "rep-closure", "--spin", "1/2", "--format", "json"]);
    let (_, text, _) = kappa(&["verify", "rep-closure", "--spin", "1/2"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["checks", "config", "elapsed_ms"]);
    assert_eq!(v["config"]["spin"], "1/2");
    assert_eq!(v["config"]["seed"], 7);
    assert!(v["elapsed_ms"].is_null());
    let from_json: Vec<String> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| format!("[{}] {}: {}", c["status"].as_str().unwrap().to_uppercase(), c["suite"].as_str().unwrap(), c["name"].as_str().unwrap()))
        .collect();
    let from_text: Vec<String> = text.lines().filter(|l| l.starts_with('[')).map(String::from).collect();
    assert_eq!(from_json, from_text);
    assert!(from_json.iter().all(|l| l.contains("spin 1/2")));
}

#[test]
fn timing_is_opt_in() {
    let (_, json, _) = kappa(&["verify", "kg", "--format", "json", "--timing"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}
