use std::process::{Command, Output};

use serde_json::Value;

fn ffmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffmzv")).args(args).env_remove("FFMZV_BUDGET").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn full_suite_q2_verifies() {
    let out = ffmzv(&["verify", "--suite", "paper", "--q", "2", "--prec", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["status"] == "verified"));
    assert_eq!(v["config"]["q"], 2);
    assert_eq!(v["config"]["precision"], 12);
}

#[test]
fn hn_q3_n6() {
    let out = ffmzv(&["hn", "--q", "3", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], "6");
    assert_eq!(v["precision"], "exact");
    let terms = v["hn"]["terms"].as_array().expect("term list");
    assert_eq!(terms.len(), 3);
    let text = ffmzv(&["hn", "--q", "3", "--n", "6", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&text.stdout).trim(), "H_6 = t^2 + t*th^3 + th^6");
}

#[test]
fn hn_closed_form_matches() {
    let out = ffmzv(&["hn", "--q", "3", "--n", "4", "--closed-form", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["closedForm"]["n"], "7");
    assert_eq!(v["closedForm"]["equal"], true);
}

#[test]
fn zeta_over_budget_exits_3() {
    let out = ffmzv(&["zeta", "--q", "9", "--tuple", "1,1,1", "--prec", "99"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ffmzv"))
        .args(["zeta", "--q", "3", "--tuple", "2", "--prec", "30"])
        .env("FFMZV_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zeta_json_shape() {
    let out = ffmzv(&["zeta", "--q", "2", "--tuple", "1", "--prec", "6", "--exact-powersum", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tuple"], serde_json::json!(["1"]));
    assert_eq!(v["q"], 2);
    assert!(v["precisionAchieved"].as_u64().unwrap() >= 6);
    assert_eq!(v["ratfun"]["precision"], "exact");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ffmzv(&["zeta", "--q", "6", "--tuple", "1"]).status.code(), Some(2));
    assert_eq!(ffmzv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ffmzv(&["verify", "--q", "3", "--family", "conj99"]).status.code(), Some(2));
    assert_eq!(ffmzv(&["cpy", "--q", "2", "--family", "thmA", "--params", "n=0"]).status.code(), Some(2));
}

#[test]
fn cpy_bundle_round_trip() {
    let dir = std::env::temp_dir().join(format!("ffmzv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = ffmzv(&["cpy", "--q", "3", "--family", "thmA", "--params", "n=0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["check"]["satisfied"], true);
    let path = dir.join("bundle.json");
    std::fs::write(&path, serde_json::to_string(&v["bundle"]).unwrap()).unwrap();
    let again = ffmzv(&["cpy", "--q", "3", "--family", "thmA", "--params", "n=0", "--bundle", path.to_str().unwrap(), "--check-only"]);
    assert_eq!(again.status.code(), Some(0));
    assert!(json(&again).get("bundle").is_none());

    // A tampered bundle fails with exit code 1.
    let mut b = v["bundle"].clone();
    b["deltas"][0]["terms"].as_array_mut().unwrap().push(serde_json::json!(["0", "0", 1]));
    std::fs::write(&path, serde_json::to_string(&b).unwrap()).unwrap();
    let bad = ffmzv(&["cpy", "--q", "3", "--family", "thmA", "--params", "n=0", "--bundle", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["check"]["satisfied"], false);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("ffmzv-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("basics.csv");
    let out = ffmzv(&["basics", "--q", "2", "--n", "1,2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,bracket,D,L,Gamma,BC"));
    assert_eq!(lines.count(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_single_family_q3() {
    let out = ffmzv(&["verify", "--q", "3", "--family", "conj29a", "--params", "n=1,N=2,pm=3,r=2", "--prec", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = &json(&out)["reports"][0];
    assert_eq!(r["params"]["provedBy"], "zeta-like-b");
}
