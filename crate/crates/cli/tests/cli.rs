use serde_json::Value;
use std::process::{Command, Output};

fn hyperlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlat")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn dot_counts(text: &str) -> (usize, usize) {
    let nodes = text.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count();
    let edges = text.lines().filter(|l| l.contains(" -- ")).count();
    (nodes, edges)
}

#[test]
fn dot_graphs_of_presets() {
    let out = hyperlat(&["classify", "--preset", "ex-four", "--dot"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph chambers {"));
    assert_eq!(dot_counts(&text), (6, 6));
    let out = hyperlat(&["classify", "--preset", "ex-comp", "--dot"]);
    assert_eq!(dot_counts(&String::from_utf8(out.stdout).unwrap()), (4, 3));
    let grouped = hyperlat(&["chambers", "classify", "--preset", "ex-comp", "--dot"]);
    assert_eq!(grouped.stdout, hyperlat(&["classify", "--preset", "ex-comp", "--dot"]).stdout);
}

#[test]
fn classify_json_report() {
    let out = hyperlat(&["classify", "--preset", "ex-comp"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["orbit_count"], 2);
    assert_eq!(v["result"]["walls"]["classes"], serde_json::json!([[0, 1], [2, -3], [2, 3]]));
    assert_eq!(v["request"]["command"], "classify");
}

#[test]
fn exit_codes() {
    assert_eq!(hyperlat(&["lattice-info", "U+"]).status.code(), Some(2));
    assert_eq!(hyperlat(&["monodromy", "--lattice", "L2", "--matrix", "[[1]]"]).status.code(), Some(2));
    let out = hyperlat(&["classify", "--lattice", "L2", "--sublattice", r#"[{"0": 1, "1": -1}]"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "domain");
    assert_eq!(hyperlat(&["lattice-info", "U + E8(-1)"]).status.code(), Some(0));
}

#[test]
fn walls_enum_signed_with_reference() {
    let sub = r#"[{"0": 1, "1": 1}, {"2": 1, "3": -1}, {"4": 1, "5": -1}, {"22": 1}]"#;
    let cone = r#"{"rays": [[1,0,0,0],[1,-1,0,0],[1,0,-1,0],[1,0,0,-1],[2,-1,-1,-1]], "reference": [1,0,0,0]}"#;
    let out = hyperlat(&["walls", "enum", "--lattice", "L2", "--sublattice", sub, "--cone", cone, "--norms", "-10:div2", "--signed"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["result"]["certificate"]["kind"], "complete");
    assert_eq!(v["result"]["walls"].as_array().unwrap().len(), 6);
}

#[test]
fn output_is_deterministic() {
    let a = hyperlat(&["classify", "--preset", "ex-four"]);
    let b = hyperlat(&["classify", "--preset", "ex-four"]);
    assert_eq!(a.stdout, b.stdout);
}
