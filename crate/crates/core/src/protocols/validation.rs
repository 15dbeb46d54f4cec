//! Side-by-side evolution of the full Jaynes–Cummings Hamiltonian and the
//! dispersive effective Hamiltonian on the same cavity space.

use alloc::vec::Vec;

use crate::dynamics::Propagator;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_effective, build_full, SystemParams};
use crate::hilbert::layout::{MODE_A, MODE_B};
use crate::hilbert::{fidelity, Ket};
use crate::oracle::PhotonSector;
use crate::C64;

use super::states::QubitPairState;
use super::transfer::transfer_input;

/// Deviation of the full model from the effective model in one photon sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorDeviation {
    pub sector: PhotonSector,
    /// Photons initially in each mode.
    pub photons: usize,
    /// Largest probability, over the sampled times, of the full-model state
    /// having left the initial photon configuration.
    pub max_photon_leakage: f64,
    /// Fidelity between the two evolved states at `t_end`.
    pub final_fidelity: f64,
    /// Largest difference of any basis-state population over the samples.
    pub max_population_deviation: f64,
}

/// Full-vs-effective comparison for every photon sector.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub t_end: f64,
    pub n_samples: usize,
    pub n_max: usize,
    pub sectors: Vec<SectorDeviation>,
}

impl ValidationReport {
    pub fn sector(&self, sector: PhotonSector) -> Option<&SectorDeviation> {
        self.sectors.iter().find(|s| s.sector == sector)
    }
}

/// Embeds `transfer_input(input)` in the cavity space with `photons` photons
/// in each mode.
pub fn cavity_input(params: &SystemParams, input: &QubitPairState, photons: usize) -> Result<Ket> {
    if photons > params.n_max() {
        return Err(Error::InvalidParameter {
            name: "n_max",
            reason: "truncation below the initial photon number".into(),
        });
    }
    let atomic = transfer_input(input);
    let space = params.cavity_space();
    let amps: Vec<C64> = (0..space.total_dim())
        .map(|i| {
            let levels = space.levels_of(i);
            if levels[MODE_A] == photons && levels[MODE_B] == photons {
                atomic.amplitude(atomic.space().index_of(&levels[..3]).expect("atomic levels"))
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    Ket::from_amplitudes(&space, amps)
}

/// Evolves `|input⟩ ⊗ |n,n⟩` under the full and the effective Hamiltonian
/// for `n = 0` and `n = 1`, sampling `n_samples` uniform times on `[0, t_end]`.
///
/// Both states live in the same space and the fidelity is invariant under a
/// common frame change, so the comparison is frame-aligned by construction.
pub fn validate_effective(
    params: &SystemParams,
    input: &QubitPairState,
    t_end: f64,
    n_samples: usize,
) -> Result<ValidationReport> {
    if params.n_max() < 2 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            reason: "the single-photon sector needs a guard level, n_max ≥ 2".into(),
        });
    }
    if n_samples < 2 {
        return Err(Error::TooFewSamples(n_samples));
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidTimeSpan(t_end));
    }
    let space = params.cavity_space();
    let full = Propagator::new(&build_full(params, &space)?)?;
    let effective = Propagator::new(&build_effective(params, &space)?)?;
    let mut sectors = Vec::with_capacity(2);
    for (sector, photons) in [(PhotonSector::Vacuum, 0), (PhotonSector::SinglePhoton, 1)] {
        let psi0 = cavity_input(params, input, photons)?;
        let in_sector: Vec<bool> = (0..space.total_dim())
            .map(|i| space.level(i, MODE_A) == photons && space.level(i, MODE_B) == photons)
            .collect();
        let mut leakage: f64 = 0.0;
        let mut deviation: f64 = 0.0;
        let mut final_fidelity = 0.0;
        for s in 0..n_samples {
            let t = t_end * s as f64 / (n_samples - 1) as f64;
            let a = full.evolve(&psi0, t)?;
            let b = effective.evolve(&psi0, t)?;
            let kept: f64 =
                a.amplitudes().iter().zip(&in_sector).filter(|(_, keep)| **keep).map(|(z, _)| z.norm_sqr()).sum();
            leakage = leakage.max(1.0 - kept);
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                deviation = deviation.max((x.norm_sqr() - y.norm_sqr()).abs());
            }
            if s == n_samples - 1 {
                final_fidelity = fidelity(&a, &b)?;
            }
        }
        sectors.push(SectorDeviation {
            sector,
            photons,
            max_photon_leakage: leakage.max(0.0),
            final_fidelity,
            max_population_deviation: deviation,
        });
    }
    Ok(ValidationReport { t_end, n_samples, n_max: params.n_max(), sectors })
}
