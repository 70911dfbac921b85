//! Acceptance battery: one test per criterion, each printing a PASS/FAIL line.

use std::io::Write;

use projrect::report::Status;
use projrect::suite::{run_criterion, SuiteOptions};

fn criterion(id: u8) {
    let result = run_criterion(id, &SuiteOptions::default());
    let mut line = result.line();
    for obs in &result.observations {
        line.push_str(&format!("\n    observation {}: {}", obs.name, obs.witness.as_deref().unwrap_or("")));
    }
    line.push('\n');
    // Written to stderr directly so the line shows even when output is captured.
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert_eq!(result.status, Status::Pass, "{}", result.line());
}

#[test]
fn criterion_01_closed_lift() {
    criterion(1);
}

#[test]
fn criterion_02_assembly_and_axioms() {
    criterion(2);
}

#[test]
fn criterion_03_census() {
    criterion(3);
}

#[test]
fn criterion_04_prime_planes() {
    criterion(4);
}

#[test]
fn criterion_05_sequence_order() {
    criterion(5);
}

#[test]
fn criterion_06_conjugate_oracles() {
    criterion(6);
}

#[test]
fn criterion_07_reid_closure() {
    criterion(7);
}

#[test]
fn criterion_08_representability() {
    criterion(8);
}

#[test]
fn criterion_09_planes() {
    criterion(9);
}

#[test]
fn criterion_10_internal_conjugation() {
    criterion(10);
}

#[test]
fn criterion_11_labeling() {
    criterion(11);
}

#[test]
fn criterion_12_rationals() {
    criterion(12);
}

#[test]
fn criterion_13_coplanarity() {
    criterion(13);
}
