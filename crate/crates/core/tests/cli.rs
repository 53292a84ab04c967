//! The `fglforge` binary on the job corpus: golden outputs, byte stability,
//! exit codes and job-file round trips.

mod common;

use std::path::Path;

use common::corpus::{check_golden, corpus, error_fixtures, run_binary};
use fglforge::cli::{parse_jobspec, EXIT_CERTIFICATE, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_VERIFICATION};

fn name(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

#[test]
fn corpus_matches_golden_outputs() {
    let jobs = corpus();
    assert_eq!(jobs.len(), 20);
    let failures: Vec<String> = jobs.iter().filter_map(|j| check_golden(j, &run_binary(j)).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn error_fixtures_match_golden_outputs() {
    let failures: Vec<String> = error_fixtures().iter().filter_map(|j| check_golden(j, &run_binary(j)).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn exit_codes() {
    let expect = |n: &str| match n {
        "14_verify_dropped_factor" | "15_verify_flipped_counit" | "20_pullback_mismatch" => EXIT_VERIFICATION,
        "16_verify_unscaled_phi" => EXIT_CERTIFICATE,
        "unknown_key" | "malformed_group" | "malformed_tuple" => EXIT_PARSE,
        "degree_too_small" | "non_prime_power" | "descend_needs_cyclic" => EXIT_VALIDATION,
        _ => EXIT_OK,
    };
    for job in corpus().iter().chain(&error_fixtures()) {
        assert_eq!(run_binary(job).code, expect(&name(job)), "{}", job.display());
    }
}

#[test]
fn output_is_byte_stable() {
    for job in corpus().iter().step_by(3) {
        assert_eq!(run_binary(job).golden(), run_binary(job).golden(), "{}", job.display());
    }
}

#[test]
fn corpus_round_trips() {
    for job in corpus() {
        let parsed = parse_jobspec(&std::fs::read_to_string(&job).unwrap()).unwrap();
        let printed = parsed.print();
        assert_eq!(parse_jobspec(&printed).unwrap(), parsed, "{}", job.display());
        assert_eq!(parse_jobspec(&printed).unwrap().print(), printed);
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_fglforge"))
        .args(["verify", "--set", "group=Z/2", "--set", "fgl=additive", "--set", "degree=3", "--out"])
        .arg(std::env::temp_dir().join("fglforge-seed-report.json"))
        .env("FGLFORGE_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let report = std::fs::read_to_string(std::env::temp_dir().join("fglforge-seed-report.json")).unwrap();
    assert!(report.contains("\"seed\": 99"), "{report}");
}
