use std::f64::consts::PI;

use cqed_core::hamiltonian::SystemParams;
use cqed_core::oracle::PhotonSector;
use cqed_core::protocols::{transfer_time, validate_effective, QubitPairState, ValidationReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TWO_PI: f64 = 2.0 * PI;

fn params(g: f64, detuning_over_g: f64, n_max: usize) -> SystemParams {
    let omega_op = TWO_PI * 192e12;
    let g_ref = TWO_PI * 15.2e9;
    SystemParams::new(omega_op, omega_op - detuning_over_g * g_ref, g, 0.0, n_max).unwrap()
}

fn input() -> QubitPairState {
    QubitPairState::random(&mut ChaCha8Rng::seed_from_u64(1))
}

fn run(p: &SystemParams) -> ValidationReport {
    validate_effective(p, &input(), transfer_time(p).unwrap(), 101).unwrap()
}

#[test]
fn far_detuned_full_model_tracks_the_effective_model() {
    let report = run(&params(TWO_PI * 15.2e9, 100.0, 2));
    let vac = report.sector(PhotonSector::Vacuum).unwrap();
    assert!(vac.max_photon_leakage <= 5e-4, "{}", vac.max_photon_leakage);
    assert!(vac.max_photon_leakage >= 1e-5, "virtual photons should be visible");
    for s in &report.sectors {
        assert!(s.final_fidelity >= 0.999, "{:?}: {}", s.sector, s.final_fidelity);
        assert!(s.max_population_deviation <= 5e-3, "{:?}", s.sector);
    }
}

#[test]
fn results_are_stable_under_a_larger_truncation() {
    let two = run(&params(TWO_PI * 15.2e9, 100.0, 2));
    let three = run(&params(TWO_PI * 15.2e9, 100.0, 3));
    for (a, b) in two.sectors.iter().zip(&three.sectors) {
        assert!((a.final_fidelity - b.final_fidelity).abs() <= 1e-8);
        assert!((a.max_photon_leakage - b.max_photon_leakage).abs() <= 1e-8);
        assert!((a.max_population_deviation - b.max_population_deviation).abs() <= 1e-8);
    }
}

#[test]
fn smaller_detuning_deviates_more() {
    let far = run(&params(TWO_PI * 15.2e9, 100.0, 2));
    let near = run(&params(TWO_PI * 15.2e9, 10.0, 2));
    for (f, n) in far.sectors.iter().zip(&near.sectors) {
        assert!(n.max_photon_leakage > 10.0 * f.max_photon_leakage);
        assert!(n.final_fidelity < f.final_fidelity);
    }
}

#[test]
fn uncoupled_system_shows_no_deviation() {
    let p = params(0.0, 100.0, 2);
    let report = validate_effective(&p, &input(), 1e-9, 11).unwrap();
    for s in &report.sectors {
        assert!(s.max_photon_leakage.abs() <= 1e-12);
        assert!(s.max_population_deviation <= 1e-12);
        assert!((s.final_fidelity - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn truncation_must_hold_the_initial_photons() {
    let p = params(TWO_PI * 15.2e9, 100.0, 1);
    assert!(validate_effective(&p, &input(), 1e-9, 11).is_err());
}
