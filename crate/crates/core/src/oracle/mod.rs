//! Closed-form reference results for the effective models.
//!
//! Everything here is derived analytically and is independent of the
//! numerical propagator in [`crate::dynamics`]; the two are cross-checked in
//! tests. The [`ledger`] compares these results with a set of printed
//! formulas that are known to disagree with them.

mod block;
pub mod ledger;

pub use block::{
    mismatch_block, vac_double_block, vac_double_from_ee1, vac_single_block, vac_single_from_eg1, BlockSolution,
    PhotonSector, DOUBLE_LABELS, SINGLE_LABELS,
};
pub use ledger::{typo_ledger, TypoEntry};

use crate::error::{Error, Result};
use crate::math::{acos, cos, sqrt};

/// Timing of the AMES preparation in the mismatched model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmesTiming {
    /// `4λ'² − δ²`; the AMES is reachable iff this is non-negative.
    pub margin: f64,
    /// Smallest `t > 0` with `cos Ωt = −δ²/(4λ'²)`, when it exists.
    pub time: Option<f64>,
}

impl AmesTiming {
    pub fn achievable(&self) -> bool {
        self.time.is_some()
    }
}

/// Relative slack on the achievability condition.
pub const CONDITION_RTOL: f64 = 1e-12;

/// AMES preparation time for mismatch `δ` and effective coupling `λ'`.
///
/// Starting from `|gg4⟩` (or `|ee1⟩`), the combined weight on `|ee1⟩` and
/// `|gg4⟩` vanishes when `cos Ωt = −δ²/(4λ'²)`, which has a solution iff
/// `4λ'² ≥ δ²`. At equality the time is `π/Ω`; at `δ = 0` it is `π/(4|λ'|)`.
pub fn ames_time_and_condition(delta: f64, lambda_prime: f64) -> Result<AmesTiming> {
    if !(delta.is_finite() && lambda_prime.is_finite()) {
        return Err(Error::InvalidParameter { name: "delta/lambda_prime", reason: "must be finite".into() });
    }
    let four_l2 = 4.0 * lambda_prime * lambda_prime;
    let margin = four_l2 - delta * delta;
    // the equality point 2|λ'| = |δ| must survive parameter round-off
    if margin < -CONDITION_RTOL * (four_l2 + delta * delta) || four_l2 == 0.0 {
        return Ok(AmesTiming { margin, time: None });
    }
    let omega = sqrt(delta * delta + four_l2);
    let target = (-delta * delta / four_l2).max(-1.0);
    Ok(AmesTiming { margin, time: Some(acos(target) / omega) })
}

/// `S(t) = (4λ'² cos Ωt + δ²)/Ω²`, the overlap `(⟨ee1| + ⟨gg4|)ψ(t)` for an
/// initial `|ee1⟩` or `|gg4⟩`. Real-valued up to a global phase.
pub fn ames_overlap(delta: f64, lambda_prime: f64, t: f64) -> f64 {
    let four_l2 = 4.0 * lambda_prime * lambda_prime;
    let omega_sq = delta * delta + four_l2;
    if omega_sq == 0.0 {
        return 1.0;
    }
    (four_l2 * cos(sqrt(omega_sq) * t) + delta * delta) / omega_sq
}

/// Fidelity to the AMES after the best single-qubit phase corrections, at
/// time `t`: `¼(1 + √(1 − S²))²`.
pub fn ames_best_phase_fidelity(delta: f64, lambda_prime: f64, t: f64) -> f64 {
    fidelity_from_overlap(ames_overlap(delta, lambda_prime, t))
}

/// Maximum over time of [`ames_best_phase_fidelity`]: 1 when `4λ'² ≥ δ²`,
/// otherwise reached at `cos Ωt = −1` where `S = (δ² − 4λ'²)/Ω²`.
pub fn ames_max_fidelity(delta: f64, lambda_prime: f64) -> f64 {
    let four_l2 = 4.0 * lambda_prime * lambda_prime;
    if four_l2 >= delta * delta && four_l2 > 0.0 {
        return 1.0;
    }
    let omega_sq = delta * delta + four_l2;
    if omega_sq == 0.0 {
        return 0.25;
    }
    fidelity_from_overlap((delta * delta - four_l2) / omega_sq)
}

fn fidelity_from_overlap(s: f64) -> f64 {
    let r = 1.0 + sqrt((1.0 - s * s).max(0.0));
    0.25 * r * r
}

#[cfg(test)]
mod tests;
