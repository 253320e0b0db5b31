use std::path::PathBuf;

use nilharm_cli::{run, Outcome};
use serde_json::Value;

fn nilharm(args: &[&str]) -> Outcome {
    run(std::iter::once("nilharm").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).expect("stdout is a JSON report")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilharm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const H3: &str = r#"{"dim":3,"brackets":[{"i":2,"j":3,"terms":[{"k":1,"c":"1"}]}]}"#;

#[test]
fn validate_h3_file() {
    let path = scratch("h3.json", H3);
    let out = nilharm(&["algebra", "validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = json(&out);
    assert_eq!(r["data"]["step"], 2);
    assert_eq!(r["checks"][0]["status"], "pass");
}

#[test]
fn jacobi_failure_exits_one_with_detail() {
    let path = scratch(
        "bad.json",
        r#"{"dim":3,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":"1"}]},{"i":1,"j":3,"terms":[{"k":1,"c":"1"}]}]}"#,
    );
    let out = nilharm(&["algebra", "validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let r = json(&out);
    assert_eq!(r["checks"][0]["status"], "fail");
    assert!(r["checks"][0]["detail"].as_str().unwrap().contains("Jacobi"));
}

#[test]
fn nonhomog_is_characteristically_nilpotent() {
    let out = nilharm(&["catalog", "nonhomog", "--check", "charnilp"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn catalog_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("nilharm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g0st.json");
    let out = nilharm(&["catalog", "g0st", "--s", "2", "--t", "-1/3", "--out", file.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = nilharm(&["algebra", "series", file.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn malformed_json_exits_three() {
    let path = scratch("broken.json", "{");
    assert_eq!(nilharm(&["algebra", "validate", path.to_str().unwrap()]).code, 3);
}

#[test]
fn missing_file_exits_three() {
    assert_eq!(nilharm(&["algebra", "validate", "/nonexistent/alg.json"]).code, 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nilharm(&["cz", "cover", "--grid", "8,63", "--alpha", "1"]).code, 2);
    assert_eq!(nilharm(&["frobnicate"]).code, 2);
    assert_eq!(nilharm(&["report", "nosuch"]).code, 2);
}

#[test]
fn h3_orbit_is_flat_with_jumps_two_three() {
    let out = nilharm(&["orbit", "--algebra", "h3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = json(&out);
    assert_eq!(r["data"]["e"], serde_json::json!([2, 3]));
    assert_eq!(r["data"]["flat"], true);
}

#[test]
fn same_seed_same_bytes_and_seed_is_recorded() {
    let a = nilharm(&["--seed", "11", "orbit", "--algebra", "ext-triangle", "--samples", "5"]);
    let b = nilharm(&["orbit", "--algebra", "ext-triangle", "--samples", "5", "--seed", "11"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(json(&a)["seed"], 11);
    assert_eq!(json(&a)["checks"], json(&b)["checks"]);
    assert_eq!(json(&a)["data"], json(&b)["data"]);
}

#[test]
fn cz_decompose_reports_constants() {
    let out = nilharm(&["cz", "decompose", "--grid", "8,64", "--alpha", "0.5", "--test", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = json(&out);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}
