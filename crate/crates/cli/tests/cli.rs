use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const MEET_SL_FULL: &str = r#"{"algebra":"MEET_SL","points":2,"opens":[[0,0],[0,1],[1,0],[1,1]]}"#;

#[test]
fn sierpinski_then_pt() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let out = qtop(&["sierpinski", "--algebra", "BOOL_LAT", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = qtop(&["pt", "--space", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["homs"].as_array().unwrap().len(), 2);
    assert_eq!(v["pt_space"]["opens"].as_array().unwrap().len(), 3);
}

#[test]
fn non_sober_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "x.json", MEET_SL_FULL);
    let out = qtop(&["check", "sober", "--space", &space]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not sober"));
    assert_eq!(json(&out)["pt_points"], 3);

    let out = qtop(&["check", "t0", "--space", &space]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sobrify_adds_one_point() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "x.json", MEET_SL_FULL);
    let out = qtop(&["sobrify", "--space", &space]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pt_space"]["points"], 3);
    assert_eq!(v["eta"]["values"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"algebra":"MEET_SL","points":2,"opens":[[0,1]]}"#,
    );
    assert_eq!(qtop(&["pt", "--space", &bad]).status.code(), Some(2));
    assert_eq!(
        qtop(&["validate", "--algebra", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(qtop(&["verify-suite", "--suite", "nope"]).status.code(), Some(2));
    let alg = write(
        dir.path(),
        "alg.json",
        r#"{"name":"broken","carrier_size":2,"ops":[{"symbol":"m","arity":2,"table":[0,0,1]}]}"#,
    );
    assert_eq!(qtop(&["validate", "--algebra", &alg]).status.code(), Some(2));
}

#[test]
fn cap_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let caps = write(dir.path(), "caps.json", r#"{"max_topology": 3}"#);
    let out = qtop(&[
        "--caps",
        &caps,
        "enumerate",
        "--algebra",
        "BOOL_LAT",
        "--max-points",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn algebra_file_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(
        dir.path(),
        "alg.json",
        r#"{"name":"two","carrier_size":2,"ops":[{"symbol":"m","arity":2,"table":[0,0,0,1]},{"symbol":"t","arity":0,"table":[1]}]}"#,
    );
    let out = qtop(&["validate", "--algebra", &alg]);
    assert!(out.status.success());
    let out = qtop(&["enumerate", "--algebra", &alg, "--max-points", "2"]);
    assert!(out.status.success());
    assert!(!json(&out)["spaces"].as_array().unwrap().is_empty());
}

#[test]
fn enumerate_counts() {
    let out = qtop(&["enumerate", "--algebra", "BOOL_LAT", "--max-points", "1"]);
    assert_eq!(json(&out)["spaces"].as_array().unwrap().len(), 2);
}

#[test]
fn closure_of_eta_image() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "x.json", MEET_SL_FULL);
    let pt = dir.path().join("pt.json");
    assert!(qtop(&["sobrify", "--space", &space, "--out", pt.to_str().unwrap()])
        .status
        .success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&pt).unwrap()).unwrap();
    let pt_space = write(dir.path(), "ptx.json", &v["pt_space"].to_string());
    let image: Vec<String> = v["eta"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.to_string())
        .collect();
    let out = qtop(&["closure", "--space", &pt_space, "--subset", &image.join(",")]);
    assert!(out.status.success());
    let c = json(&out);
    assert_eq!(c["closure"]["members"].as_array().unwrap().len(), 3);
    assert_eq!(c["closed"], false);
}

#[test]
fn map_checks() {
    let dir = tempfile::tempdir().unwrap();
    let x: Value = serde_json::from_str(MEET_SL_FULL).unwrap();
    let out = qtop(&["sobrify", "--space", &write(dir.path(), "x.json", MEET_SL_FULL)]);
    let v = json(&out);
    let eta = serde_json::json!({"dom": x, "cod": v["pt_space"], "values": v["eta"]["values"]});
    let map = write(dir.path(), "eta.json", &eta.to_string());
    assert_eq!(qtop(&["check", "continuous", "--map", &map]).status.code(), Some(0));
    assert_eq!(qtop(&["check", "epi", "--map", &map]).status.code(), Some(0));
    assert_eq!(qtop(&["check", "embedding", "--map", &map]).status.code(), Some(0));
    assert_eq!(qtop(&["check", "extremal", "--map", &map]).status.code(), Some(1));
    let out = qtop(&["firmness", "--map", &map]);
    assert!(out.status.success());
    assert_eq!(json(&out)["g_after_f_star_is_id"], true);
    assert!(qtop(&["lift", "--map", &map]).status.success());
}

#[test]
fn adjunction_command() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("s.json");
    qtop(&["sierpinski", "--algebra", "BOOL_LAT", "--out", space.to_str().unwrap()]);
    let out = qtop(&["adjunction", "--space", space.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["ex_is_pt"], true);
    assert_eq!(v["k_is_eta"], true);
    assert_eq!(v["k_is_homeomorphism"], true);
}

#[test]
fn verify_suite_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = qtop(&[
        "verify-suite",
        "--suite",
        "pt-sober",
        "--algebra",
        "MEET_SL",
        "--max-points",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let v: Value = serde_json::from_str(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["failures"].as_array().unwrap().len(), 0);
}
