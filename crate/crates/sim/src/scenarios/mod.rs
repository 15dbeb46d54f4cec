//! One runner per scenario. Each returns its checks and a JSON `results`
//! object and writes its CSV artifacts; [`run`] wraps them in a summary.

mod ames;
mod scan;
mod teleport;
mod transfer;
mod validate;

use std::path::Path;

use cqed_core::hilbert::layout::{QUBIT_A, QUBIT_B, QUQUART};
use cqed_core::HilbertSpace;

use crate::config::{Scenario, ScenarioConfig};
use crate::error::SimError;
use crate::output::ArtifactDir;
use crate::summary::{Check, CheckKind, ParamsSummary, Summary, UNITS};

/// What a scenario runner hands back.
pub(crate) struct Outcome {
    pub checks: Vec<Check>,
    pub results: serde_json::Value,
}

/// Outcome of a whole run.
#[derive(Debug)]
pub struct RunReport {
    pub summary: Summary,
    pub summary_file: String,
}

impl RunReport {
    /// 0 when every validation check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.passed {
            0
        } else {
            2
        }
    }
}

/// Runs `scenario` with `config`, writing artifacts under `out_dir`.
pub fn run(scenario: Scenario, config: &ScenarioConfig, out_dir: &Path) -> Result<RunReport, SimError> {
    config.validate(scenario)?;
    let params = config.system_params(scenario)?;
    let mut dir = ArtifactDir::create(out_dir)?;
    let outcome = match scenario {
        Scenario::Transfer => transfer::run(config, &params, &mut dir)?,
        Scenario::Ames => ames::run(config, &params, &mut dir)?,
        Scenario::Scan => scan::run(config, &params, &mut dir)?,
        Scenario::Teleport => teleport::run(config, &params, &mut dir)?,
        Scenario::ValidateEffective => validate::run(config, &params, &mut dir)?,
    };
    let summary_file = format!("{}_summary.json", scenario.name().replace('-', "_"));
    let passed = outcome.checks.iter().all(|c| c.passed || c.kind == CheckKind::Informational);
    let mut artifacts = dir.written().to_vec();
    artifacts.push(summary_file.clone());
    let summary = Summary {
        scenario: scenario.name(),
        units: UNITS,
        params: ParamsSummary::from(&params),
        seed: config.seed,
        tolerances: config.tolerances.clone(),
        passed,
        checks: outcome.checks,
        results: outcome.results,
        artifacts,
    };
    dir.write_json(&summary_file, &summary)?;
    Ok(RunReport { summary, summary_file })
}

/// `gg1`-style label of an atomic basis state.
pub(crate) fn atomic_label(space: &HilbertSpace, index: usize) -> String {
    let q = |f| if space.level(index, f) == 0 { 'g' } else { 'e' };
    format!("{}{}{}", q(QUBIT_A), q(QUBIT_B), space.level(index, QUQUART) + 1)
}

/// Uniform grid of `n` points on `[0, t_end]`.
pub(crate) fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| start + (end - start) * k as f64 / (n - 1) as f64).collect()
}
