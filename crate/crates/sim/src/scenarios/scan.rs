use cqed_core::hamiltonian::SystemParams;
use cqed_core::protocols::{AmesScan, ScanAxis};
use rayon::prelude::*;
use serde::Serialize;

use super::{linspace, Outcome};
use crate::config::ScenarioConfig;
use crate::error::SimError;
use crate::output::{table_csv, ArtifactDir};
use crate::summary::Check;

/// Slack on monotonicity, for curves that are flat to round-off near the peak.
const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Serialize)]
struct AxisResult {
    axis: &'static str,
    window: f64,
    /// Smallest fidelity within `±window` (the curve is evaluated at the
    /// window edges as well as on the grid).
    min_in_window: f64,
    peak: f64,
    monotone: bool,
}

#[derive(Serialize)]
struct ScanResults {
    nominal_duration: f64,
    correction: [f64; 2],
    axes: Vec<AxisResult>,
    csv: String,
}

/// Fidelity never rises when moving away from ε = 0 on either side.
fn monotone_from_peak(errors: &[f64], fidelity: &[f64]) -> bool {
    let mut right: Vec<(f64, f64)> =
        errors.iter().copied().zip(fidelity.iter().copied()).filter(|p| p.0 >= 0.0).collect();
    let mut left: Vec<(f64, f64)> =
        errors.iter().copied().zip(fidelity.iter().copied()).filter(|p| p.0 <= 0.0).collect();
    right.sort_by(|a, b| a.0.total_cmp(&b.0));
    left.sort_by(|a, b| b.0.total_cmp(&a.0));
    [right, left].iter().all(|side| side.windows(2).all(|w| w[1].1 <= w[0].1 + MONOTONE_SLACK))
}

pub(crate) fn run(cfg: &ScenarioConfig, params: &SystemParams, dir: &mut ArtifactDir) -> Result<Outcome, SimError> {
    let scan = AmesScan::new(params)?;
    let tol = &cfg.tolerances;
    let errors = linspace(-cfg.grid.epsilon_max, cfg.grid.epsilon_max, cfg.grid.n_points);
    let axes = [
        (ScanAxis::Time, tol.time_error_window, tol.time_error_fidelity),
        (ScanAxis::Coupling, tol.coupling_error_window, tol.coupling_error_fidelity),
    ];

    let curves: Vec<Vec<f64>> = axes
        .iter()
        .map(|(axis, _, _)| {
            errors.par_iter().map(|&e| scan.point(*axis, e).map(|p| p.fidelity)).collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<f64>> = errors.iter().enumerate().map(|(k, &e)| vec![e, curves[0][k], curves[1][k]]).collect();
    let csv = "scan.csv".to_string();
    dir.write_text(&csv, &table_csv(&["epsilon", "time_fidelity", "coupling_fidelity"], &rows))?;

    let mut checks = Vec::new();
    let mut results = Vec::new();
    for ((axis, window, bound), curve) in axes.iter().zip(&curves) {
        let edges = [scan.point(*axis, -window)?.fidelity, scan.point(*axis, *window)?.fidelity];
        let min_in_window = errors
            .iter()
            .zip(curve)
            .filter(|(e, _)| e.abs() <= *window)
            .map(|(_, f)| *f)
            .chain(edges)
            .fold(f64::INFINITY, f64::min);
        let monotone = monotone_from_peak(&errors, curve);
        let name = axis.name();
        checks.push(Check::at_least(&format!("{name} errors within ±{window}"), min_in_window, *bound));
        checks.push(Check::at_least(
            &format!("{name} curve monotone from the peak"),
            f64::from(u8::from(monotone)),
            1.0,
        ));
        results.push(AxisResult {
            axis: name,
            window: *window,
            min_in_window,
            peak: scan.point(*axis, 0.0)?.fidelity,
            monotone,
        });
    }
    let (phi_a, phi_b) = scan.correction();
    let results =
        ScanResults { nominal_duration: scan.nominal_duration(), correction: [phi_a, phi_b], axes: results, csv };
    Ok(Outcome { checks, results: serde_json::to_value(results).expect("serializable") })
}
