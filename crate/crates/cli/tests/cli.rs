use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymhecke")).args(args).env("ASYMHECKE_CACHE_DIR", cache).output().unwrap()
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_of(out: &Output) -> (i32, String) {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    (out.status.code().unwrap(), v["error"]["code"].as_str().unwrap().to_string())
}

#[test]
fn h3_dimension() {
    let v = json_of(&run(&["dim", "--type", "H3", "--I", "2,3", "--t", "1,2,3"]));
    assert_eq!(v, serde_json::json!({"dimension": "-1", "numerator": "-6", "denominator": "6"}));
}

#[test]
fn dimension_with_rho_check_and_engines() {
    for engine in ["better", "abc"] {
        let v = json_of(&run(&["dim", "--type", "F4", "--I", "1,3,4", "--t", "2,3,4,1", "--engine", engine, "--check-rho", "2"]));
        assert_eq!(v["dimension"], "3");
        assert_eq!(v["rho_check"]["agree"], true);
    }
}

#[test]
fn g2_lif() {
    let out = run(&["lif", "--type", "G2", "--x", "1,2,1,2,1", "--i", "2", "--y", "1,2,1,2"]);
    assert_eq!(json_of(&out), Value::String("-1/3".into()));
    let out = run(&["lif", "--type", "G2", "--x", "12121", "--i", "2", "--y", "1212", "--method", "both", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "-1/3");
}

#[test]
fn a1_cells() {
    let v = json_of(&run(&["cells", "--type", "A1"]));
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    let mut a: Vec<i64> = cells.iter().map(|c| c["a"].as_i64().unwrap()).collect();
    a.sort();
    assert_eq!(a, [0, 1]);
}

#[test]
fn gamma_table_for_s4_middle_cell() {
    let v = json_of(&run(&["gamma-table", "--type", "A3", "--d", "13"]));
    assert_eq!(v["a"], 2);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements[0], "13");
    assert_eq!(v["table"].as_array().unwrap().len(), elements.len() * elements.len());
    assert_eq!(v["table"][0]["product"], serde_json::json!({"13": 1}));
    let out = run(&["gamma-table", "--type", "A3", "--d", "12"]);
    assert_eq!(error_of(&out), (3, "precondition".into()));
}

#[test]
fn hecke_commands() {
    let v = json_of(&run(&["mult", "--type", "B2", "--x", "12", "--y", "21"]));
    let ws: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["w"].as_str().unwrap()).collect();
    assert_eq!(ws, ["121", "1"]);
    let v = json_of(&run(&["bsdecomp", "--type", "A3", "--word", "31213"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let v = json_of(&run(&["kl", "--type", "A3", "--w", "1321", "--y", "1"]));
    assert_eq!(v["entries"][0]["mu"], 0);
    let v = json_of(&run(&["pairing", "--type", "A1", "--x", "1", "--y", "1"]));
    assert_eq!(v["pairing"], serde_json::json!([[0, 1], [2, 1]]));
    let v = json_of(&run(&["clasp", "--type", "A3", "--word", "31213"]));
    assert_eq!(v["exists"], false);
    let v = json_of(&run(&["clasp", "--type", "A3", "--w", "31213", "--summand", "1:1", "--summand", "1:-1"]));
    assert_eq!(v["exists"], true);
}

#[test]
fn polynomial_commands() {
    let v = json_of(&run(&["rho", "--type", "A2"]));
    assert_eq!(v["rho"], "a1 + a2");
    let v = json_of(&run(&["demazure", "--type", "A3", "--word", "13", "--f", "rho^2"]));
    assert_eq!(v["result"], "2");
    let v = json_of(&run(&["ptrace", "--type", "H3", "--d", "232", "--t", "123", "--f", "rho^3", "--grid"]));
    assert!(v["grid"].as_array().unwrap().len() > 3);
    let v2 = json_of(&run(&["ptrace", "--type", "H3", "--d", "232", "--t", "123", "--f", "rho^3", "--engine", "abc"]));
    assert_eq!(v["result"], v2["result"]);
}

#[test]
fn branching_formats() {
    let out = run(&["classify", "--type", "H3", "--word", "232123", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
    assert!(dot.contains("label="));
    let v = json_of(&run(&["classify", "--type", "H3", "--word", "232123"]));
    assert_eq!(v["shape"], "linear");
    let v = json_of(&run(&["branching", "--type", "G2", "--word", "12121", "--mode", "full"]));
    assert!(!v["edges"].as_array().unwrap().is_empty());
    let out = run(&["cells", "--type", "A2", "--format", "dot"]);
    assert_eq!(error_of(&out), (2, "usage".into()));
}

#[test]
fn exit_codes() {
    assert_eq!(error_of(&run(&["frobnicate"])), (2, "usage".into()));
    assert_eq!(error_of(&run(&["info"])), (2, "usage".into()));
    assert_eq!(error_of(&run(&["kl", "--type", "A2", "--w", "x"])), (2, "parse".into()));
    assert_eq!(error_of(&run(&["ptrace", "--type", "D4", "--d", "143", "--t", "2341", "--f", "rho^3"])), (3, "not_linear".into()));
    assert_eq!(error_of(&run(&["lif", "--type", "G2", "--x", "12", "--i", "2", "--y", "1"])), (3, "not_recursible".into()));
    assert_eq!(error_of(&run(&["info", "--type", "A7", "--bound", "1000"])), (4, "group_too_large".into()));
    assert_eq!(error_of(&run(&["info", "--type", "H3", "--realization", "crystallographic"])), (3, "not_crystallographic".into()));
}

#[test]
fn custom_realization() {
    let v = json_of(&run(&["info", "--type", "B2", "--realization", "custom", "--cartan", "2,-1;-2,2"]));
    assert_eq!(v["realization"], "custom");
    assert_eq!(v["cartan"][1][0], "-2");
    let out = run(&["info", "--type", "B2", "--realization", "custom", "--cartan", "2,-1;-1,2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["cells", "--type", "B3"];
    let first = run_in(dir.path(), &args);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run_in(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);
    // Corrupt the cache: the answer must not change.
    let path = files[0].as_ref().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("[[1,1]]", "[[1,5]]", 1)).unwrap();
    let third = run_in(dir.path(), &args);
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("corrupt"));
}

#[test]
fn text_output() {
    let out = run(&["info", "--type", "A2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 6"));
    assert!(text.contains("w0: 121"));
}
