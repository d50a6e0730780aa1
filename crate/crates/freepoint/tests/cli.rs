use std::process::{Command, Output};

use serde_json::Value;

fn freepoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freepoint")).args(args).output().expect("binary runs")
}

fn payload(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    v["payload"].clone()
}

#[test]
fn census_reports_exact_rationals() {
    let out = freepoint(&["census", "--n", "2", "--d", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let p = payload(&out);
    assert_eq!(p["t1"], serde_json::json!({ "num": "1", "den": "4" }));
    assert_eq!(p["t2"], serde_json::json!({ "num": "3", "den": "28" }));
}

#[test]
fn verify_single_case() {
    let out = freepoint(&["verify-exceptional", "--case", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let p = payload(&out);
    assert_eq!(p["cases"][0]["verdict"], "free");
    assert_eq!(p["cases"][0]["rank"], 10);
}

#[test]
fn corrupted_modulus_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/case1.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(src).unwrap()).unwrap();
    // A modulus without constant term is divisible by x.
    v["tower"]["levels"][0]["modulus"][0] = serde_json::json!(0);
    std::fs::write(dir.path().join("case1.json"), v.to_string()).unwrap();
    let out = freepoint(&["verify-exceptional", "--case", "1", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ModulusNotIrreducible"));
}

#[test]
fn usage_and_budget_codes() {
    assert_eq!(freepoint(&["census", "--n", "2"]).status.code(), Some(2));
    assert_eq!(freepoint(&["verify-exceptional", "--case", "7"]).status.code(), Some(2));
    assert_eq!(freepoint(&["census", "--n", "2", "--d", "3", "--q", "3", "--budget", "100"]).status.code(), Some(3));
    assert_eq!(freepoint(&["bounds", "--n", "2", "--d", "3", "--q", "3"]).status.code(), Some(0));
}

#[test]
fn sweep_certifies_plane_cubic_point() {
    let out = freepoint(&["find-free-point", "--n", "2", "--d", "3", "--q", "3", "--strategy", "sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let p = payload(&out);
    assert_eq!(p["result"]["found"], true);
    assert_eq!(p["result"]["certificate"]["verdict"], "free");
}

#[test]
fn payload_ignores_thread_count() {
    let args = ["linsys", "build", "--kind", "irr", "--n", "2", "--d", "2", "--q", "5"];
    let run = |threads: &str| {
        let mut a = args.to_vec();
        a.extend(["--threads", threads]);
        let out = freepoint(&a);
        assert_eq!(out.status.code(), Some(0));
        serde_json::to_string(&payload(&out)).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn build_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("irr.json");
    let f = file.to_str().unwrap();
    let built = freepoint(&["linsys", "build", "--kind", "irr", "--n", "2", "--d", "2", "--q", "3", "--out", f]);
    assert_eq!(built.status.code(), Some(0));
    let out = freepoint(&["linsys", "verify", "--system", f, "--expect", "irreducible"]);
    assert_eq!(out.status.code(), Some(0));
    let p = payload(&out);
    assert_eq!(p["members"], "13");
    assert_eq!(p["counterexample_count"], "0");
    // The same system read as reducible yields counterexamples.
    let wrong = freepoint(&["linsys", "verify", "--system", f, "--expect", "reducible"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn text_format_renders_json() {
    let out = freepoint(&["claim-chain", "--n", "2", "--d", "6", "--q", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "passed = true"), "{text}");
}
