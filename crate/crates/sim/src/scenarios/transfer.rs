use cqed_core::dynamics::{trace_evolution, TrackedState};
use cqed_core::hamiltonian::SystemParams;
use cqed_core::protocols::{transfer_target, transfer_time, Transfer, TransferVariant};
use cqed_core::{HilbertSpace, C64};
use serde::Serialize;

use super::{atomic_label, Outcome};
use crate::config::{ParamsConfig, ScenarioConfig};
use crate::error::SimError;
use crate::output::{time_series_csv, ArtifactDir};
use crate::summary::{complex_pairs, Check};
use crate::tolerances::quoted;

/// Sign pattern the vacuum model imprints on (C_gg, C_ge, C_eg, C_ee).
const VACUUM_SIGNS: [f64; 4] = [1.0, -1.0, -1.0, 1.0];

#[derive(Serialize)]
struct VariantResult {
    variant: &'static str,
    fidelity: f64,
    round_trip_fidelity: f64,
    /// Phases of the ququart coefficients relative to the input, level order.
    phase_profile: [f64; 4],
    ququart: Vec<[f64; 2]>,
    /// Largest deviation of the coefficient map from its expected diagonal,
    /// after removing a global phase.
    coefficient_map_deviation: f64,
    max_norm_error: f64,
    csv: String,
}

#[derive(Serialize)]
struct TransferResults {
    duration: f64,
    cavity_lifetime: f64,
    input: Vec<[f64; 2]>,
    variants: Vec<VariantResult>,
}

/// Tracked states: the four input components and the four target levels.
fn tracked() -> Vec<TrackedState> {
    let space = HilbertSpace::atoms();
    let levels = [[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 0], [0, 0, 1], [0, 0, 2], [0, 0, 3]];
    levels
        .iter()
        .map(|l| {
            let i = space.index_of(l).expect("atomic levels");
            TrackedState::new(atomic_label(&space, i), i)
        })
        .collect()
}

fn map_deviation(map: &[[C64; 4]; 4], diag: [f64; 4]) -> f64 {
    let phase = map[0][0] / map[0][0].norm();
    let mut worst: f64 = 0.0;
    for (i, row) in map.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let want = if i == j { diag[i] } else { 0.0 };
            worst = worst.max((v / phase - want).norm());
        }
    }
    worst
}

pub(crate) fn run(cfg: &ScenarioConfig, params: &SystemParams, dir: &mut ArtifactDir) -> Result<Outcome, SimError> {
    let input = cfg.transfer.input.resolve("transfer.input", cfg.seed)?;
    let duration = transfer_time(params)?;
    let t_end = cfg.grid.t_end.unwrap_or(duration);
    let tol = &cfg.tolerances;
    let target = transfer_target(&input);
    let mut checks = Vec::new();
    let mut variants = Vec::new();
    for variant in cfg.transfer.variants() {
        let setup = Transfer::new(params, variant)?;
        let series = trace_evolution(
            setup.hamiltonian(),
            &setup.prepared(&input)?,
            t_end,
            cfg.grid.n_samples,
            &tracked(),
            &target,
            setup.frame(),
        )?;
        let csv = format!("transfer_{}.csv", variant.name());
        dir.write_text(&csv, &time_series_csv(&series))?;
        let report = setup.run(&input)?;
        let round_trip = setup.round_trip_fidelity(&input)?;
        let expected = if variant == TransferVariant::Vacuum { VACUUM_SIGNS } else { [1.0; 4] };
        let deviation = map_deviation(&setup.coefficient_map()?, expected);

        let name = variant.name();
        checks.push(Check::at_most(&format!("{name}: coefficient map"), deviation, tol.protocol_infidelity));
        checks.push(Check::at_least(&format!("{name}: round trip"), round_trip, 1.0 - tol.protocol_infidelity));
        if variant != TransferVariant::Vacuum {
            checks.push(Check::at_least(&format!("{name}: fidelity"), report.fidelity, 1.0 - tol.protocol_infidelity));
        }
        variants.push(VariantResult {
            variant: name,
            fidelity: report.fidelity,
            round_trip_fidelity: round_trip,
            phase_profile: report.phase_profile,
            ququart: complex_pairs(&report.ququart),
            coefficient_map_deviation: deviation,
            max_norm_error: series.max_norm_error(),
            csv,
        });
    }
    let cavity_lifetime = cfg.cavity_lifetime(params);
    if cfg.params == ParamsConfig::default() {
        checks.push(Check::against_quoted("transfer time", duration, quoted::TRANSFER_TIME, tol));
        checks.push(Check::against_quoted("cavity lifetime", cavity_lifetime, quoted::CAVITY_LIFETIME, tol));
    }
    let results = TransferResults { duration, cavity_lifetime, input: complex_pairs(&input.amplitudes()), variants };
    Ok(Outcome { checks, results: serde_json::to_value(results).expect("serializable") })
}
