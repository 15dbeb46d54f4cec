use std::fs;
use std::path::Path;
use std::process::Command;

use cqed_sim::{run, Scenario, ScenarioConfig};
use serde_json::Value;
use tempfile::TempDir;

const SCHEMA: &str = include_str!("../schema/summary.schema.json");

fn config(json: &str) -> ScenarioConfig {
    ScenarioConfig::from_json(json).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cqed")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn every_summary_matches_the_published_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let dir = TempDir::new().unwrap();
    let cfg = config(r#"{"grid": {"n_samples": 11, "n_points": 9}}"#);
    for scenario in
        [Scenario::Transfer, Scenario::Ames, Scenario::Scan, Scenario::Teleport, Scenario::ValidateEffective]
    {
        let report = run(scenario, &cfg, dir.path()).unwrap();
        let summary = read_json(&dir.path().join(&report.summary_file));
        let errors: Vec<String> = validator.iter_errors(&summary).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", scenario.name());
        for file in summary["artifacts"].as_array().unwrap() {
            assert!(dir.path().join(file.as_str().unwrap()).exists());
        }
    }
}

#[test]
fn csv_has_one_row_per_sample_and_round_trips() {
    let dir = TempDir::new().unwrap();
    run(Scenario::Ames, &config(r#"{"grid": {"n_samples": 37}}"#), dir.path()).unwrap();
    let text = fs::read_to_string(dir.path().join("ames_mismatch.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "t_seconds,ee1_re,ee1_im,ee1_pop,ge2_re,ge2_im,ge2_pop,eg3_re,eg3_im,eg3_pop,gg4_re,gg4_im,gg4_pop,fidelity"
    );
    assert_eq!(lines.len(), 1 + 37);
    assert!(!text.contains('\r'));
    let last: Vec<f64> = lines[37].split(',').map(|c| c.parse().unwrap()).collect();
    assert!((last.last().unwrap() - 1.0).abs() < 1e-9, "fidelity at T_e");
    // populations of |ge2⟩ and |eg3⟩ coincide at the equality point
    for row in &lines[1..] {
        let v: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((v[6] - v[9]).abs() < 1e-9);
    }
}

#[test]
fn reruns_are_byte_identical() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let cfg = config(r#"{"seed": 7, "grid": {"n_samples": 21}}"#);
    for scenario in [Scenario::Transfer, Scenario::Teleport] {
        run(scenario, &cfg, a.path()).unwrap();
        run(scenario, &cfg, b.path()).unwrap();
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 6);
    for name in names {
        assert_eq!(fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap(), "{name:?}");
    }
}

#[test]
fn transfer_summary_reports_timescales() {
    let dir = TempDir::new().unwrap();
    let report = run(Scenario::Transfer, &config(r#"{"grid": {"n_samples": 5}}"#), dir.path()).unwrap();
    let r = &report.summary.results;
    let lambda = report.summary.params.lambda.abs();
    let duration = r["duration"].as_f64().unwrap();
    assert!((duration - std::f64::consts::PI / (2.0 * lambda)).abs() < 1e-24);
    assert!((duration - 1.6e-9).abs() < 0.05e-9, "rounds to the quoted value");
    assert!(
        (r["cavity_lifetime"].as_f64().unwrap() - 3.9e4 / (1e-4 * 2.0 * std::f64::consts::PI * 192e12)).abs() < 1e-20
    );
    assert!(report.summary.passed);
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn hertz_and_angular_configs_agree() {
    let dir = TempDir::new().unwrap();
    let tau = 2.0 * std::f64::consts::PI;
    let hz = config(r#"{"params": {"g": 15.2e9, "omega_op": 192e12, "detuning_over_g": 100}}"#);
    let angular = config(&format!(
        r#"{{"angular": true, "params": {{"g": {}, "omega_op": {}, "detuning_over_g": 100}}}}"#,
        tau * 15.2e9,
        tau * 192e12
    ));
    let a = run(Scenario::Transfer, &hz, dir.path()).unwrap().summary.params;
    let b = run(Scenario::Transfer, &angular, dir.path()).unwrap().summary.params;
    assert!((a.g_a - b.g_a).abs() <= 1e-6 * a.g_a);
    assert!((a.omega_op - b.omega_op).abs() <= 1e-12 * a.omega_op);
}

#[test]
fn validate_effective_far_and_near_resonance() {
    let dir = TempDir::new().unwrap();
    let far = run(Scenario::ValidateEffective, &config(r#"{"grid": {"n_samples": 41}}"#), dir.path()).unwrap();
    assert!(far.summary.passed);
    let deviation = read_json(&dir.path().join("deviation.json"));
    assert_eq!(deviation["judged"], true);
    let far_leak = deviation["sectors"][0]["max_photon_leakage"].as_f64().unwrap();
    assert!(far_leak <= 5e-4);

    let ledger = read_json(&dir.path().join("typo_ledger.json"));
    let locations: Vec<&str> = ledger.as_array().unwrap().iter().map(|e| e["location"].as_str().unwrap()).collect();
    assert!(locations.iter().any(|l| l.contains("double-excitation eigenvalues")));
    assert!(locations.iter().any(|l| l.contains("expansion coefficients")));

    let near = run(
        Scenario::ValidateEffective,
        &config(r#"{"params": {"detuning_over_g": 10}, "grid": {"n_samples": 41}}"#),
        dir.path(),
    )
    .unwrap();
    assert_eq!(near.exit_code(), 0, "informational only");
    let deviation = read_json(&dir.path().join("deviation.json"));
    assert_eq!(deviation["judged"], false);
    assert!(deviation["sectors"][0]["max_photon_leakage"].as_f64().unwrap() > 10.0 * far_leak);
}

#[test]
fn uncoupled_validation_shows_nothing() {
    let dir = TempDir::new().unwrap();
    let cfg = config(r#"{"params": {"g": 0, "detuning": 1.52e12}, "grid": {"n_samples": 11, "t_end": 1e-9}}"#);
    run(Scenario::ValidateEffective, &cfg, dir.path()).unwrap();
    let deviation = read_json(&dir.path().join("deviation.json"));
    for s in deviation["sectors"].as_array().unwrap() {
        assert!(s["max_photon_leakage"].as_f64().unwrap().abs() < 1e-12);
        assert!(s["max_population_deviation"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn unreachable_ames_is_a_validation_failure() {
    let dir = TempDir::new().unwrap();
    let cfg = config(r#"{"params": {"lambda_prime": 100e6, "delta": 300e6}}"#);
    let report = run(Scenario::Ames, &cfg, dir.path()).unwrap();
    assert_eq!(report.exit_code(), 2);
    assert_eq!(report.summary.results["achievable"], false);
    let best = report.summary.results["max_best_phase_fidelity"].as_f64().unwrap();
    assert!(best < 1.0 && best > 0.5);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, _) = cli(&["teleport", "--out", out, "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.trim().ends_with("teleport_summary.json"));
    assert_eq!(read_json(&dir.path().join("teleport_summary.json"))["seed"], 3);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"grid": {"n_samples": 1}}"#).unwrap();
    let (code, _, stderr) = cli(&["transfer", "--config", bad.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 1);
    assert!(stderr.contains("grid.n_samples"));

    fs::write(&bad, r#"{"scenario": "ames"}"#).unwrap();
    assert_eq!(cli(&["transfer", "--config", bad.to_str().unwrap(), "--out", out]).0, 1);
    fs::write(&bad, r#"{"parms": {}}"#).unwrap();
    assert_eq!(cli(&["transfer", "--config", bad.to_str().unwrap(), "--out", out]).0, 1);
    fs::write(&bad, r#"{"params": {"detuning_over_g": 2}}"#).unwrap();
    let (code, _, stderr) = cli(&["transfer", "--config", bad.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 1, "{stderr}");

    fs::write(&bad, r#"{"tolerances": {"time_error_fidelity": 0.9999}, "grid": {"n_points": 5}}"#).unwrap();
    let (code, _, stderr) = cli(&["scan", "--config", bad.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 2);
    assert!(stderr.contains("time errors"));
}
