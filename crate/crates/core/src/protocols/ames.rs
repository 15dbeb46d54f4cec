use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::dynamics::{Frame, Propagator};
use crate::error::{Error, Result};
use crate::hamiltonian::{bare_energy, effective_mismatch, effective_vacuum, phase_gate, SystemParams};
use crate::hilbert::layout::{QUBIT_A, QUBIT_B};
use crate::hilbert::{fidelity, HilbertSpace, Ket, Operator};
use crate::math::{abs, wrap_phase};
use crate::oracle::ames_time_and_condition;
use crate::C64;

/// Atomic levels of the four AMES components, in the order
/// `ee1, ge2, eg3, gg4`.
pub const AMES_LEVELS: [[usize; 3]; 4] = [[1, 1, 0], [0, 1, 1], [1, 0, 2], [0, 0, 3]];

/// Which effective model prepares the AMES.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmesMode {
    /// Degenerate qubits, vacuum model, `t = π/(4|λ|)`.
    Resonant,
    /// Mismatched qubits, `t = t_e` with `cos Ωt_e = −δ²/(4λ'²)`.
    Mismatch,
}

impl AmesMode {
    pub fn name(self) -> &'static str {
        match self {
            AmesMode::Resonant => "resonant",
            AmesMode::Mismatch => "mismatch",
        }
    }
}

/// `(|ee1⟩ + |ge2⟩ + |eg3⟩ + |gg4⟩)/2`
pub fn ames_target() -> Ket {
    let space = HilbertSpace::atoms();
    let mut amps = alloc::vec![C64::new(0.0, 0.0); space.total_dim()];
    for l in AMES_LEVELS {
        amps[space.index_of(&l).expect("valid levels")] = C64::new(0.5, 0.0);
    }
    Ket::from_amplitudes(&space, amps).expect("normalized")
}

/// `|gg4⟩`
pub fn ames_initial() -> Ket {
    Ket::basis(&HilbertSpace::atoms(), &AMES_LEVELS[3]).expect("valid levels")
}

/// Amplitudes of `ψ` on `ee1, ge2, eg3, gg4`.
pub fn ames_components(psi: &Ket) -> Result<[C64; 4]> {
    let space = psi.space();
    let mut out = [C64::new(0.0, 0.0); 4];
    for (slot, l) in out.iter_mut().zip(AMES_LEVELS) {
        *slot = psi.amplitude(space.index_of(&l)?);
    }
    Ok(out)
}

/// Phase-gate angles `(φ_A, φ_B)` that align the `eg3` and `ge2`
/// components of `psi` with its `gg4` component. Components with negligible
/// weight leave the corresponding angle at zero.
pub fn aligning_phases(psi: &Ket) -> Result<(f64, f64)> {
    let c = ames_components(psi)?;
    let align =
        |k: usize| if c[k].norm() > 1e-12 && c[3].norm() > 1e-12 { wrap_phase(c[3].arg() - c[k].arg()) } else { 0.0 };
    Ok((align(2), align(1)))
}

/// `U_A(φ_A) U_B(φ_B)` on the atomic space.
pub fn correction_gates(phi_a: f64, phi_b: f64) -> Result<Operator> {
    let space = HilbertSpace::atoms();
    Ok(&phase_gate(&space, QUBIT_A, phi_a)? * &phase_gate(&space, QUBIT_B, phi_b)?)
}

/// Result of one AMES preparation.
#[derive(Debug, Clone)]
pub struct AmesPreparation {
    pub mode: AmesMode,
    pub duration: f64,
    /// Phase-gate angles applied to qubits A and B.
    pub correction: (f64, f64),
    /// State before the phase gates (co-rotating frame).
    pub raw_state: Ket,
    /// State after the phase gates.
    pub state: Ket,
    /// Fidelity of `state` to [`ames_target`].
    pub fidelity: f64,
}

/// Evolution setup for AMES preparation at fixed parameters.
#[derive(Debug, Clone)]
pub struct AmesProtocol {
    mode: AmesMode,
    hamiltonian: Operator,
    propagator: Propagator,
    frame: Frame,
    duration: f64,
}

impl AmesProtocol {
    pub fn new(mode: AmesMode, params: &SystemParams) -> Result<Self> {
        let (hamiltonian, duration) = match mode {
            AmesMode::Resonant => {
                let l = params.lambda();
                if l == 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "g_a",
                        reason: "AMES needs a non-zero coupling".into(),
                    });
                }
                (effective_vacuum(params)?, PI / (4.0 * abs(l)))
            }
            AmesMode::Mismatch => {
                let timing = ames_time_and_condition(params.delta(), params.lambda_prime())?;
                let t = timing.time.ok_or(Error::AmesCondition { margin: timing.margin })?;
                (effective_mismatch(params)?, t)
            }
        };
        Ok(Self {
            mode,
            propagator: Propagator::new(&hamiltonian)?,
            hamiltonian,
            frame: Frame::co_rotating(&bare_energy(params, &HilbertSpace::atoms())?)?,
            duration,
        })
    }

    pub fn mode(&self) -> AmesMode {
        self.mode
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Uncorrected state at time `t`, starting from `|gg4⟩`.
    pub fn raw_state_at(&self, t: f64) -> Result<Ket> {
        let psi = self.propagator.evolve(&ames_initial(), t)?;
        self.frame.apply(&psi, t)
    }

    /// Evolves for the nominal duration and applies the phase gates that
    /// align the result with the AMES.
    pub fn prepare(&self) -> Result<AmesPreparation> {
        let raw_state = self.raw_state_at(self.duration)?;
        let correction = aligning_phases(&raw_state)?;
        self.finish(raw_state, correction, self.duration)
    }

    /// Evolves for `t` and applies fixed phase gates.
    pub fn prepare_with(&self, t: f64, correction: (f64, f64)) -> Result<AmesPreparation> {
        let raw_state = self.raw_state_at(t)?;
        self.finish(raw_state, correction, t)
    }

    fn finish(&self, raw_state: Ket, correction: (f64, f64), duration: f64) -> Result<AmesPreparation> {
        let state = correction_gates(correction.0, correction.1)?.apply(&raw_state)?;
        let fidelity = fidelity(&ames_target(), &state)?;
        Ok(AmesPreparation { mode: self.mode, duration, correction, raw_state, state, fidelity })
    }

    /// Fidelity to the AMES at time `t` with the best phase gates for that
    /// time.
    pub fn best_phase_fidelity_at(&self, t: f64) -> Result<f64> {
        let raw = self.raw_state_at(t)?;
        let correction = aligning_phases(&raw)?;
        Ok(self.finish(raw, correction, t)?.fidelity)
    }

    /// Largest [`best_phase_fidelity_at`](Self::best_phase_fidelity_at) over
    /// `n_samples` uniformly spaced times in `[0, t_end]`, with its time.
    pub fn max_best_phase_fidelity(&self, t_end: f64, n_samples: usize) -> Result<(f64, f64)> {
        if n_samples < 2 {
            return Err(Error::TooFewSamples(n_samples));
        }
        let mut best = (0.0, 0.0);
        for s in 0..n_samples {
            let t = t_end * s as f64 / (n_samples - 1) as f64;
            let f = self.best_phase_fidelity_at(t)?;
            if f > best.1 {
                best = (t, f);
            }
        }
        Ok(best)
    }
}

/// Prepares the AMES from `|gg4⟩` in the given mode.
pub fn prepare_ames(mode: AmesMode, params: &SystemParams) -> Result<AmesPreparation> {
    AmesProtocol::new(mode, params)?.prepare()
}

/// Perturbed quantity in a robustness scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanAxis {
    /// Evolve for `T_e(1 + ε)`.
    Time,
    /// Scale `λ'` (both branches) by `1 + ε` and evolve for the nominal `T_e`.
    Coupling,
}

impl ScanAxis {
    pub fn name(self) -> &'static str {
        match self {
            ScanAxis::Time => "time",
            ScanAxis::Coupling => "coupling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub error: f64,
    pub fidelity: f64,
}

/// Robustness scan of the mismatched AMES preparation. The phase gates and
/// the evolution time are fixed at their unperturbed values.
#[derive(Debug, Clone)]
pub struct AmesScan {
    params: SystemParams,
    nominal: AmesProtocol,
    correction: (f64, f64),
}

impl AmesScan {
    pub fn new(params: &SystemParams) -> Result<Self> {
        let nominal = AmesProtocol::new(AmesMode::Mismatch, params)?;
        let correction = nominal.prepare()?.correction;
        Ok(Self { params: *params, nominal, correction })
    }

    pub fn nominal_duration(&self) -> f64 {
        self.nominal.duration()
    }

    pub fn correction(&self) -> (f64, f64) {
        self.correction
    }

    /// One point of the scan; independent of every other point.
    pub fn point(&self, axis: ScanAxis, error: f64) -> Result<ScanPoint> {
        let t = self.nominal.duration();
        let prep = match axis {
            ScanAxis::Time => self.nominal.prepare_with(t * (1.0 + error), self.correction)?,
            ScanAxis::Coupling => {
                let perturbed = self.params.with_lambda_scale(1.0 + error)?;
                let hamiltonian = effective_mismatch(&perturbed)?;
                let protocol = AmesProtocol {
                    mode: AmesMode::Mismatch,
                    propagator: Propagator::new(&hamiltonian)?,
                    hamiltonian,
                    frame: self.nominal.frame.clone(),
                    duration: t,
                };
                protocol.prepare_with(t, self.correction)?
            }
        };
        Ok(ScanPoint { error, fidelity: prep.fidelity })
    }

    pub fn scan(&self, axis: ScanAxis, errors: &[f64]) -> Result<Vec<ScanPoint>> {
        errors.iter().map(|&e| self.point(axis, e)).collect()
    }
}

/// Convenience wrapper around [`AmesScan`].
pub fn ames_sensitivity_scan(params: &SystemParams, axis: ScanAxis, errors: &[f64]) -> Result<Vec<ScanPoint>> {
    AmesScan::new(params)?.scan(axis, errors)
}
