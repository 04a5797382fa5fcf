use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cellwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellwork"))
        .args(args)
        .env_remove("CELLWORK_THREADS")
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cellwork-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn builtin() -> Value {
    serde_json::from_str(include_str!("../data/builtin.json")).unwrap()
}

#[test]
fn validate_builtin() {
    let o = cellwork(&["validate", "@builtin"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["squares"], 4);
}

#[test]
fn validate_reports_ill_defined_hom() {
    let mut f = builtin();
    // Z/4 -> Z/6, 1 -> 1 does not respect 4 = 0
    f["homs"]["bad"] = serde_json::json!({ "src": "Z4", "dst": "Z6", "mat": [["1"]] });
    let p = temp_file("ill.json", &f.to_string());
    let o = cellwork(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v = json_out(&o);
    assert_eq!(v["valid"], false);
    let d = &v["diagnostics"][0];
    assert_eq!(d["entity"], "homs.bad");
    assert_eq!(d["invariant"], "well-defined");
}

#[test]
fn validate_reports_non_commuting_square() {
    let mut f = builtin();
    f["squares"]["skew"] = serde_json::json!({ "f": "id_Z", "g": "id_Z", "u": "id_Z", "v": "span_23_f" });
    let p = temp_file("skew.json", &f.to_string());
    let v = json_out(&cellwork(&["validate", p.to_str().unwrap()]));
    let diags = v["diagnostics"].as_array().unwrap();
    assert!(diags
        .iter()
        .any(|d| d["entity"] == "squares.skew" && d["invariant"] == "commutes"), "{diags:?}");
}

#[test]
fn validate_reports_parse_position() {
    let p = temp_file("broken.json", "{\n  \"version\": \"cellwork/1\",\n  \"groups\": {,\n}\n");
    let o = cellwork(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let d = &json_out(&o)["diagnostics"][0];
    assert_eq!(d["line"], 3);
    assert!(d["column"].as_u64().unwrap() > 0);
}

#[test]
fn query_examples() {
    let v = json_out(&cellwork(&["query", "@builtin", "ext1", "Z4", "Z6"]));
    assert_eq!(v["ext1"]["torsion"], serde_json::json!(["2"]));
    let v = json_out(&cellwork(&["query", "@builtin", "snf", "Z_Z2"]));
    assert!(v.is_object());
    let v = json_out(&cellwork(&["query", "@builtin", "cellular-square", "reg_pullback"]));
    assert_eq!(v["is_cellular"], false);
    let v = json_out(&cellwork(&["query", "@builtin", "cellular-square", "eu_coordinate"]));
    assert_eq!(v["is_cellular"], true);
    let v = json_out(&cellwork(&["query", "@builtin", "pushout", "span_id"]));
    assert_eq!(v["isomorphic_to_b"], true);
    let v = json_out(&cellwork(&["--structure", "all", "query", "@builtin", "cellular-square", "reg_pullback"]));
    assert_eq!(v["is_cellular"], true);
    let o = cellwork(&["query", "@builtin", "ext1", "Z4", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_out(&o)["error"]["kind"], "unknown-entity");
}

#[test]
fn suite_input_errors_exit_two() {
    assert_eq!(cellwork(&["suite", "@builtin", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(cellwork(&["suite", "@builtin", "--suite", "stability"]).status.code(), Some(2));
    assert_eq!(cellwork(&["suite", "/nonexistent/instance.json"]).status.code(), Some(2));
    assert_eq!(cellwork(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn witness_instances_feed_back_into_query() {
    let o = cellwork(&["suite", "@builtin", "--suite", "effective-unions", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let line = String::from_utf8(o.stdout).unwrap();
    let report: Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(report["verdict"], "counterexamples-found");
    let w = &report["failures"][0];
    assert_eq!(w["kind"], "pullback-not-cellular");
    let p = temp_file("witness.json", &w["instance"].to_string());
    let path = p.to_str().unwrap();
    assert_eq!(cellwork(&["validate", path]).status.code(), Some(0));
    let v = json_out(&cellwork(&["query", path, "cellular-square", "pullback"]));
    assert_eq!(v["is_cellular"], false);
}
