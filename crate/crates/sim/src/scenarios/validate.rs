use cqed_core::hamiltonian::SystemParams;
use cqed_core::oracle::{typo_ledger, PhotonSector};
use cqed_core::protocols::{transfer_time, validate_effective, ValidationReport};
use serde::Serialize;

use super::Outcome;
use crate::config::ScenarioConfig;
use crate::error::SimError;
use crate::output::{fmt_f64, ArtifactDir};
use crate::summary::Check;

/// Agreement required between n_max and n_max + 1.
pub const TRUNCATION_STABILITY: f64 = 1e-8;

#[derive(Serialize)]
struct SectorRow {
    sector: &'static str,
    photons: usize,
    max_photon_leakage: f64,
    final_fidelity: f64,
    max_population_deviation: f64,
}

#[derive(Serialize)]
struct DeviationReport {
    t_end: f64,
    n_samples: usize,
    n_max: usize,
    detuning_over_g: f64,
    judged: bool,
    sectors: Vec<SectorRow>,
    /// Largest change of any reported number when n_max grows by one.
    truncation_change: f64,
}

#[derive(Serialize)]
struct LedgerEntry {
    location: String,
    printed: String,
    recomputed: String,
    max_deviation: f64,
}

fn sector_name(s: PhotonSector) -> &'static str {
    match s {
        PhotonSector::Vacuum => "vacuum",
        PhotonSector::SinglePhoton => "single-photon",
    }
}

fn rows(report: &ValidationReport) -> Vec<SectorRow> {
    report
        .sectors
        .iter()
        .map(|s| SectorRow {
            sector: sector_name(s.sector),
            photons: s.photons,
            max_photon_leakage: s.max_photon_leakage,
            final_fidelity: s.final_fidelity,
            max_population_deviation: s.max_population_deviation,
        })
        .collect()
}

fn truncation_change(a: &ValidationReport, b: &ValidationReport) -> f64 {
    a.sectors
        .iter()
        .zip(&b.sectors)
        .flat_map(|(x, y)| {
            [
                (x.max_photon_leakage - y.max_photon_leakage).abs(),
                (x.final_fidelity - y.final_fidelity).abs(),
                (x.max_population_deviation - y.max_population_deviation).abs(),
            ]
        })
        .fold(0.0, f64::max)
}

pub(crate) fn run(cfg: &ScenarioConfig, params: &SystemParams, dir: &mut ArtifactDir) -> Result<Outcome, SimError> {
    let tol = &cfg.tolerances;
    let input = cfg.transfer.input.resolve("transfer.input", cfg.seed)?;
    let t_end = match cfg.grid.t_end {
        Some(t) => t,
        None => {
            transfer_time(params).map_err(|_| SimError::invalid("grid.t_end", "required when the coupling is zero"))?
        }
    };
    let report = validate_effective(params, &input, t_end, cfg.grid.n_samples)?;
    let larger = validate_effective(&params.with_n_max(params.n_max() + 1)?, &input, t_end, cfg.grid.n_samples)?;
    let change = truncation_change(&report, &larger);

    let ratio = params.detuning().abs() / params.g_a().max(params.g_b());
    let judged = params.g_a() > 0.0 && ratio >= tol.judged_detuning_ratio * (1.0 - 1e-12);
    let mut checks = Vec::new();
    for s in &report.sectors {
        let name = sector_name(s.sector);
        if s.sector == PhotonSector::Vacuum {
            checks.push(Check::at_most(
                &format!("{name}: photon population"),
                s.max_photon_leakage,
                tol.photon_population,
            ));
        }
        checks.push(Check::at_least(
            &format!("{name}: full vs effective fidelity"),
            s.final_fidelity,
            tol.effective_fidelity,
        ));
    }
    checks.push(Check::at_most("n_max stability", change, TRUNCATION_STABILITY));
    if !judged {
        checks = checks
            .into_iter()
            .map(|c| c.informational().with_note(format!("Δ/g = {ratio:.3} is outside the judged regime")))
            .collect();
    }

    let deviation = DeviationReport {
        t_end,
        n_samples: report.n_samples,
        n_max: report.n_max,
        detuning_over_g: ratio,
        judged,
        sectors: rows(&report),
        truncation_change: change,
    };
    dir.write_json("deviation.json", &deviation)?;
    let mut csv = String::from("sector,photons,max_photon_leakage,final_fidelity,max_population_deviation\n");
    for r in &deviation.sectors {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.sector,
            r.photons,
            fmt_f64(r.max_photon_leakage),
            fmt_f64(r.final_fidelity),
            fmt_f64(r.max_population_deviation)
        ));
    }
    dir.write_text("deviation.csv", &csv)?;

    let ledger = ledger(cfg)?;
    checks.push(Check::at_least("typo ledger entries", ledger.len() as f64, 1.0));
    dir.write_json("typo_ledger.json", &ledger)?;

    let results = serde_json::json!({
        "deviation": deviation,
        "ledger_entries": ledger.len(),
        "deviation_file": "deviation.json",
        "ledger_file": "typo_ledger.json",
    });
    Ok(Outcome { checks, results })
}

/// The ledger is recomputed at the reference operating points, so it does
/// not depend on the detuning under validation.
fn ledger(cfg: &ScenarioConfig) -> Result<Vec<LedgerEntry>, SimError> {
    let reference = crate::config::ScenarioConfig { params: Default::default(), ..cfg.clone() };
    let resonant = reference.system_params_for(false)?;
    let mismatch = reference.system_params_for(true)?;
    Ok(typo_ledger(&resonant, &mismatch)?
        .into_iter()
        .map(|e| LedgerEntry {
            location: e.location,
            printed: e.printed,
            recomputed: e.recomputed,
            max_deviation: e.max_deviation,
        })
        .collect())
}
