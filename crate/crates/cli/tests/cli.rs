use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystalline")).args(args).env_remove("CRYSTALLINE_SEED").output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn lr_coefficient() {
    assert_eq!(stdout_json(&["lr-coeff", "[2,1]", "[1]", "[1,1]"]), json!({ "c": 1 }));
    assert_eq!(stdout_json(&["lr-coeff", "[3,2,1]", "[2,1]", "[2,1]"]), json!({ "c": 2 }));
    let list = stdout_json(&["lr-list", "[3,2,1]", "[2,1]", "[2,1]"]);
    assert_eq!(list.as_array().map(Vec::len), Some(2));
}

#[test]
fn rsk_of_zero_and_inverse() {
    let v = stdout_json(&["rsk", "--matrix", "[]"]);
    assert_eq!(v["P"]["rows"], json!([]));
    assert_eq!(v["Q"]["rows"], json!([]));
    let v = stdout_json(&["rsk", "--matrix", r#"{"entries":[[1,1,2],[2,3,1]]}"#]);
    let back = stdout_json(&["rsk", "--inverse", &v["P"].to_string(), &v["Q"].to_string()]);
    assert_eq!(back, json!({ "entries": [[1, 1, 2], [2, 3, 1]] }));
}

#[test]
fn worked_example_through_psi_and_psi_inf() {
    let v = stdout_json(&["psi", "--S", r#"{"rows":[[1,1,2],[2,3]]}"#, "--T", r#"{"rows":[[1,2,2],[2,3],[4]]}"#]);
    assert_eq!(v["x"]["rows"], json!([[null, null, 1], [null, 1]]));
    assert_eq!(v["y"]["rows"], json!([[null, null, 2], [null, 1], [4]]));
    let a = r#"{"rows":[{"ldef":1,"rdef":0,"lo":1,"bits":[0,1]},{"ldef":1,"rdef":0,"lo":2,"bits":[0,1]},{"ldef":1,"rdef":0,"lo":3}]}"#;
    let b = r#"{"rows":[{"ldef":0,"rdef":1,"lo":3,"bits":[1,0]},{"ldef":0,"rdef":1,"lo":1,"bits":[1,0,0]},{"ldef":0,"rdef":1,"lo":1,"bits":[1,0,1]}]}"#;
    let w = stdout_json(&["psi-inf", "--A", a, "--B", b, "--mu", "[2,2,1]", "--nu", "[3,2,1]", "--base", "0"]);
    assert_eq!((w["x"]["rows"].clone(), w["y"]["rows"].clone()), (v["x"]["rows"].clone(), v["y"]["rows"].clone()));
}

#[test]
fn decomposition_and_glinf_multiplicity() {
    let v = stdout_json(&["decompose", "[1]", "[1]", "--base", "0", "--window", "6"]);
    assert_eq!(v.as_array().map(Vec::len), Some(2));
    let m = stdout_json(&["glinf-mult", "--mu", "[0]", "--nu", "[0]", "--label", r#"{"zeta":[1,1],"eta":[1,1]}"#]);
    assert_eq!(m["multiplicity"], json!(1));
    let m = stdout_json(&["glinf-mult", "--mu", "[0]", "--nu", "[0]", "--label", r#"{"zeta":[2],"eta":[2]}"#]);
    assert_eq!(m["multiplicity"], json!(0));
}

#[test]
fn graph_output_is_deterministic() {
    let args = ["graph", r#"{"rows":[[1,2],[2]]}"#, "--window", "1..4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("digraph crystal {"));
    let j = stdout_json(&["graph", r#"{"rows":[[1,2],[2]]}"#, "--window", "1..4", "--format", "json"]);
    assert_eq!(j["nodes"].as_array().map(Vec::len), Some(20));
}

#[test]
fn errors_and_exit_codes() {
    let o = run(&["lr-coeff", "[2,1", "[1]", "[1]"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).expect("error JSON");
    assert_eq!(err["error"]["code"], json!("malformed_input"));
    let o = run(&["graph", "[5]", "--window", "1..3"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).expect("error JSON");
    assert_eq!(err["error"]["code"], json!("window_exhausted"));
    let o = run(&["graph", r#"{"rows":[[1]]}"#, "--window", "1..9", "--node-cap", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "all", "--size", "huge"]).status.code(), Some(2));
}

#[test]
fn verify_reports_every_suite() {
    let v = stdout_json(&["verify", "all", "--size", "small"]);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["suites"].as_array().map(Vec::len), Some(11));
    let v = stdout_json(&["verify", "paper-examples"]);
    assert_eq!(v["suites"].as_array().map(Vec::len), Some(2));
    let v = stdout_json(&["verify", "modified"]);
    assert_eq!(v["suites"].as_array().map(Vec::len), Some(3));
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
}
