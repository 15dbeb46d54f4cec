//! Every acceptance threshold in one place.
//!
//! The defaults below are what the acceptance suite checks. A scenario
//! config may override any of them under its `tolerances` key; the values
//! in force are echoed into every summary so a run documents its own bar.

use serde::{Deserialize, Serialize};

/// Thresholds used by the scenario checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Allowed infidelity of an exact protocol (transfer, round trip, AMES).
    pub protocol_infidelity: f64,
    /// Allowed infidelity of a teleportation branch after correction.
    pub teleport_infidelity: f64,
    /// Relative time error over which the AMES fidelity must stay high.
    pub time_error_window: f64,
    /// Minimum AMES fidelity within `time_error_window`.
    pub time_error_fidelity: f64,
    /// Relative coupling error over which the AMES fidelity must stay high.
    pub coupling_error_window: f64,
    /// Minimum AMES fidelity within `coupling_error_window`.
    pub coupling_error_fidelity: f64,
    /// Relative agreement required between a computed and a quoted timescale.
    pub timing_relative: f64,
    /// Maximum virtual photon population of the full model (vacuum sector).
    pub photon_population: f64,
    /// Minimum fidelity between full-model and effective-model evolution.
    pub effective_fidelity: f64,
    /// Detuning (in units of g) from which the effective-model checks apply;
    /// closer to resonance the deviations are reported but not judged.
    pub judged_detuning_ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            protocol_infidelity: 1e-9,
            teleport_infidelity: 1e-10,
            time_error_window: 0.05,
            time_error_fidelity: 0.993,
            coupling_error_window: 0.1,
            coupling_error_fidelity: 0.989,
            timing_relative: 0.01,
            photon_population: 5e-4,
            effective_fidelity: 0.999,
            judged_detuning_ratio: 100.0,
        }
    }
}

/// A quoted reference value and the number of significant figures it was
/// given to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quoted {
    pub value: f64,
    pub figures: i32,
}

/// Quoted reference timescales the summaries are compared against.
pub mod quoted {
    use super::Quoted;

    /// Two-qubit → ququart transfer at g = 2π×15.2 GHz, Δ = 100g.
    pub const TRANSFER_TIME: Quoted = Quoted { value: 1.6e-9, figures: 2 };
    /// Resonant AMES preparation at the same coupling.
    pub const RESONANT_AMES_TIME: Quoted = Quoted { value: 8e-10, figures: 1 };
    /// Mismatched AMES preparation at δ = 2π×304 MHz, λ' = 2π×152 MHz.
    pub const MISMATCH_AMES_TIME: Quoted = Quoted { value: 1.2e-9, figures: 2 };
    /// Cavity lifetime at Q = 3.9×10⁴ with a 10⁻⁴ excitation.
    pub const CAVITY_LIFETIME: Quoted = Quoted { value: 3.2e-7, figures: 2 };
}

/// Relative deviation `|value − reference| / |reference|`.
pub fn relative_deviation(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// Whether `value` rounds to `reference` at `figures` significant figures.
pub fn agrees_to_figures(value: f64, reference: f64, figures: i32) -> bool {
    if value == 0.0 || reference == 0.0 {
        return value == reference;
    }
    let scale = 10f64.powi(figures - 1 - reference.abs().log10().floor() as i32);
    (value * scale).round() == (reference * scale).round()
}
