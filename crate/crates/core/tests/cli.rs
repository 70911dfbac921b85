use std::process::{Command, Output};

use serde_json::Value;

fn projrect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projrect")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn assemble_pr_3_2() {
    let out = projrect(&["assemble", "-p", "3", "-k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["points"], 37);
    assert_eq!(v["data"]["special_lines"], 4);
    assert_eq!(v["data"]["ordinary_lines"], 81);
}

#[test]
fn verify_pr_2_2() {
    let out = projrect(&["verify", "-p", "2", "-k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 pass"));
}

#[test]
fn reid_4_has_no_representation_over_gf5() {
    let out = projrect(&["represent", "--reid", "4", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["verdict"], "none");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(projrect(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(projrect(&["assemble", "-p", "6", "-k", "1"]).status.code(), Some(2));
    assert_eq!(projrect(&["represent", "--q", "12"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "-p", "3", "-k", "2", "--budget", "1000", "--seed", "7"];
    let (a, b) = (projrect(&args), projrect(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["data"]["a6_mode"], "sampled");
}

#[test]
fn timing_adds_durations() {
    let out = projrect(&["suite", "--timing"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("duration_ms"));
}

#[test]
fn injected_fault_is_caught() {
    let out = projrect(&["suite", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format() {
    let out = projrect(&["census", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}
