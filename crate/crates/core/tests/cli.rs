use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_daha-lab")).args(args).output().unwrap();
    (o.status.code(), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn text_report_lists_checks() {
    let (code, out) = run(&["verify", "--type", "A", "--rank", "1", "--suite", "roots", "--format", "text"]);
    assert_eq!(code, Some(0));
    assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains("roots.coxeter")));
    assert!(out.trim_end().ends_with("0 not passing"));
}

#[test]
fn symbolic_mode_has_no_seeds_on_relations() {
    let (code, out) = run(&["verify", "--type", "A", "--rank", "1", "--suite", "daha-relations", "--mode", "symbolic", "--box", "2"]);
    assert_eq!(code, Some(0));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["seed"].is_null()));
    assert_eq!(doc["config"]["mode"], "symbolic");
}

#[test]
fn g2_has_no_macdonald_operator() {
    let (code, out) = run(&["emit", "macdonald-op", "--type", "G", "--rank", "2", "--r", "1"]);
    assert_eq!(code, Some(2));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["error"]["kind"], "config");
}

#[test]
fn complex_lambda_is_accepted() {
    let (code, out) = run(&["rank1", "--k", "0.5", "--lambda", "0.3+0.2i", "--s", "0.7"]);
    assert_eq!(code, Some(0), "{out}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["params"]["lambda"][0], serde_json::json!([0.3, 0.2]));
}

#[test]
fn macdonald_matrix_in_a1() {
    let (code, out) = run(&["emit", "macdonald-op", "--type", "A", "--rank", "1", "--r", "1", "--degree", "2"]);
    assert_eq!(code, Some(0));
    let doc: Value = serde_json::from_str(&out).unwrap();
    let d = &doc["document"];
    assert_eq!(d["columns"].as_array().unwrap().len(), 3);
    assert_eq!(d["matrix"].as_array().unwrap().len(), d["rows"].as_array().unwrap().len());
}
