use cqed_core::hamiltonian::SystemParams;
use cqed_core::protocols::{
    derive_correction_table, derive_reverse_correction_table, ideal_resource, prepare_ames, reverse_all_branches,
    teleport, teleport_all_branches, AmesMode, QuquartState,
};
use cqed_core::{Error, Ket};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Outcome;
use crate::config::{ResourceName, ScenarioConfig};
use crate::error::SimError;
use crate::output::{fmt_f64, ArtifactDir};
use crate::summary::{complex_pairs, Check};

#[derive(Serialize)]
struct Shot {
    seed: u64,
    alice: &'static str,
    bob: &'static str,
    probability: f64,
    fidelity: f64,
}

#[derive(Serialize)]
struct TeleportResults {
    resource: &'static str,
    /// Fidelity of the prepared resource to the ideal AMES (1 for `ideal`).
    resource_fidelity: f64,
    maximally_entangled: bool,
    input: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_branch_fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_probability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_reverse_fidelity: Option<f64>,
    /// Smallest fidelity of forward followed by reverse teleportation over
    /// all 16 × 16 outcome pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    min_round_trip_fidelity: Option<f64>,
    shots: Vec<Shot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    csv: Option<String>,
}

fn resource(cfg: &ScenarioConfig, params: &SystemParams) -> Result<(&'static str, Ket, f64), SimError> {
    Ok(match cfg.teleport.resource {
        ResourceName::Ideal => ("ideal", ideal_resource(), 1.0),
        ResourceName::AmesResonant => {
            let p = prepare_ames(AmesMode::Resonant, params)?;
            ("ames-resonant", p.state, p.fidelity)
        }
        ResourceName::AmesMismatch => {
            let p = prepare_ames(AmesMode::Mismatch, params)?;
            ("ames-mismatch", p.state, p.fidelity)
        }
    })
}

pub(crate) fn run(cfg: &ScenarioConfig, params: &SystemParams, dir: &mut ArtifactDir) -> Result<Outcome, SimError> {
    let (name, resource, resource_fidelity) = resource(cfg, params)?;
    let input = cfg.teleport.input.resolve("teleport.input", cfg.seed)?;
    let bound = 1.0 - cfg.tolerances.teleport_infidelity;
    let mut results = TeleportResults {
        resource: name,
        resource_fidelity,
        maximally_entangled: true,
        input: complex_pairs(&input.amplitudes()),
        min_branch_fidelity: None,
        total_probability: None,
        min_reverse_fidelity: None,
        min_round_trip_fidelity: None,
        shots: Vec::new(),
        csv: None,
    };
    let forward = match derive_correction_table(&resource) {
        Ok(table) => table,
        Err(Error::NotMaximallyEntangled { worst_case_fidelity }) => {
            results.maximally_entangled = false;
            let check = Check::at_least("worst-case branch fidelity", worst_case_fidelity, bound)
                .with_note("resource is not maximally entangled");
            return Ok(Outcome { checks: vec![check], results: serde_json::to_value(results).expect("serializable") });
        }
        Err(e) => return Err(e.into()),
    };
    let reverse = derive_reverse_correction_table(&resource)?;

    let branches = teleport_all_branches(&input, &forward)?;
    let mut csv = String::from("alice,bob,probability,fidelity\n");
    for b in &branches {
        let (a, c) = b.outcome;
        csv.push_str(&format!("{},{},{},{}\n", a.name(), c.name(), fmt_f64(b.probability), fmt_f64(b.fidelity)));
    }
    dir.write_text("teleport_branches.csv", &csv)?;
    let min_branch = branches.iter().map(|b| b.fidelity).fold(f64::INFINITY, f64::min);
    let total: f64 = branches.iter().map(|b| b.probability).sum();

    let ququart = QuquartState::random(&mut ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1)));
    let min_reverse =
        reverse_all_branches(&ququart, &reverse)?.iter().map(|b| b.fidelity).fold(f64::INFINITY, f64::min);
    let mut min_round_trip = f64::INFINITY;
    for b in &branches {
        let moved = QuquartState::new(b.output)?;
        for r in reverse_all_branches(&moved, &reverse)? {
            let overlap: cqed_core::C64 = input.amplitudes().iter().zip(&r.output).map(|(x, y)| x.conj() * y).sum();
            min_round_trip = min_round_trip.min(overlap.norm_sqr());
        }
    }
    for k in 0..cfg.teleport.shots as u64 {
        let seed = cfg.seed.wrapping_add(k);
        let run = teleport(&input, &resource, seed)?;
        results.shots.push(Shot {
            seed,
            alice: run.outcome.alice.name(),
            bob: run.outcome.bob.name(),
            probability: run.outcome.probability,
            fidelity: run.fidelity,
        });
    }
    let min_shot = results.shots.iter().map(|s| s.fidelity).fold(f64::INFINITY, f64::min);

    let checks = vec![
        Check::at_least("every branch after correction", min_branch, bound),
        Check::at_most("branch probabilities sum to one", (total - 1.0).abs(), cfg.tolerances.teleport_infidelity),
        Check::at_least("every reverse branch after correction", min_reverse, bound),
        Check::at_least("forward then reverse is the identity", min_round_trip, bound),
        Check::at_least("sampled runs", min_shot, bound),
    ];
    results.min_branch_fidelity = Some(min_branch);
    results.total_probability = Some(total);
    results.min_reverse_fidelity = Some(min_reverse);
    results.min_round_trip_fidelity = Some(min_round_trip);
    results.csv = Some("teleport_branches.csv".into());
    Ok(Outcome { checks, results: serde_json::to_value(results).expect("serializable") })
}
