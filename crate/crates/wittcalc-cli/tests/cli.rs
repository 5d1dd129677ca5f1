use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittcalc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8").trim_end().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).expect("valid JSON")
}

#[test]
fn classify_zp2() {
    let out = run(&["classify", r#"{"name":"ZP_2"}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"symmetry":1,"height":3,"complement":[]}"#);
}

#[test]
fn witt_group_of_zl2_plus_z2() {
    let v = json(&run(&["witt-group", r#"{"name":"ZL_2","sum":[2]}"#]));
    assert_eq!(v["group"], serde_json::json!([2]));
    assert!(stdout(&run(&["witt-group", r#"{"name":"ZL_2","sum":[2]}"#])).starts_with(r#"{"group":[2],"#));
}

#[test]
fn tensor_z4_with_q_hat_plus() {
    let v = json(&run(&["tensor", r#"{"G":[4],"Q":"Q^+"}"#]));
    assert_eq!(v["group"], serde_json::json!([8]));
    assert_eq!(v["generators"].as_array().map(Vec::len), Some(2));
}

#[test]
fn induced_map_q_plus_to_zp() {
    let v = json(&run(&["induced-map", r#"{"source":"Q+","target":"ZP","matrix":[[2],[-1]]}"#]));
    assert_eq!(v["matrix"], serde_json::json!([[8], [1]]));
}

#[test]
fn stably_metabolic_witness_is_reported_separately() {
    let form = r#"{"param":"ZL_2","lambda":[[0,1],[-1,0]],"mu":[[2],[2]]}"#;
    let v = json(&run(&["metabolic", "--bound", "5", form]));
    assert_eq!(v["witt_zero"], Value::Bool(true));
    assert_eq!(v["metabolic"], "no");
}

#[test]
fn embeddings_verify() {
    let v = json(&run(&["embed", r#"{"form":{"param":"Q^+","lambda":[[1,0],[0,-1]],"mu":[[1],[-1]]}}"#]));
    let embeddings = v["embeddings"].as_array().expect("array");
    assert!(!embeddings.is_empty());
    assert!(embeddings.iter().all(|e| e["verified"] == Value::Bool(true)));
}

#[test]
fn payload_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wittcalc"))
        .arg("classify")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().expect("stdin").write_all(br#""Q-""#).expect("write");
    let out = child.wait_with_output().expect("wait");
    assert_eq!(stdout(&out), r#"{"symmetry":-1,"height":1,"complement":[]}"#);
}

#[test]
fn axiom_violation_exits_2_and_names_the_axiom() {
    let out = run(&["classify", r#"{"carrier":{"orders":[4]},"h":[0],"pOne":[1]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("php = 2p"));
}

#[test]
fn schema_errors_exit_3() {
    assert_eq!(run(&["classify", r#"{"nam":"ZP"}"#]).status.code(), Some(3));
    assert_eq!(run(&["classify", "not json"]).status.code(), Some(3));
    assert_eq!(run(&["tensor", r#"{"G":[1],"Q":"Q+"}"#]).status.code(), Some(3));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["split", r#"{"carrier":[0,3],"h":[1,0],"pOne":[2,1]}"#];
    let first = run(&args);
    assert_eq!(first.stdout, run(&args).stdout);
    let v = json(&first);
    assert_eq!(v["standard"], "Q^+");
    assert_eq!(v["iso"]["matrix"], serde_json::json!([[1, 0], [1, 1]]));
}
