//! Exact closed-system time evolution.
//!
//! Every Hamiltonian in this crate is time independent and at most a few
//! hundred levels large, so states are propagated through a one-off
//! eigendecomposition instead of a time-stepping integrator.

mod eig;
mod series;

use alloc::vec::Vec;

pub use eig::{hermitian_eig, EigenSystem, HERMITIAN_TOL};
pub use series::{energy_drift, trace_evolution, TimeSeries, TrackedState};

use crate::error::{Error, Result};
use crate::hilbert::{HilbertSpace, Ket, Operator};
use crate::math::cis;
use crate::C64;

/// `e^{−iHt}` for a fixed Hermitian `H`, valid for any `t`.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: EigenSystem,
}

impl Propagator {
    pub fn new(h: &Operator) -> Result<Self> {
        Ok(Self { eig: hermitian_eig(h)? })
    }

    pub fn space(&self) -> &HilbertSpace {
        self.eig.vectors.space()
    }

    pub fn eigensystem(&self) -> &EigenSystem {
        &self.eig
    }

    /// `ψ(t) = V e^{−iEt} V† ψ`. At `t = 0` the input is returned unchanged.
    pub fn evolve(&self, psi: &Ket, t: f64) -> Result<Ket> {
        if psi.space() != self.space() {
            return Err(Error::SpaceMismatch);
        }
        if !t.is_finite() {
            return Err(Error::InvalidTimeSpan(t));
        }
        if t == 0.0 {
            return Ok(psi.clone());
        }
        let v = &self.eig.vectors;
        let n = v.dim();
        let amps = psi.amplitudes();
        let coeffs: Vec<C64> = (0..n)
            .map(|k| {
                let c: C64 = (0..n).map(|i| v.get(i, k).conj() * amps[i]).sum();
                c * cis(-self.eig.values[k] * t)
            })
            .collect();
        let out = (0..n).map(|i| (0..n).map(|k| v.get(i, k) * coeffs[k]).sum()).collect();
        Ok(Ket::from_unitary_image(psi.space(), out))
    }

    /// The dense unitary `e^{−iHt}`.
    pub fn unitary(&self, t: f64) -> Operator {
        let v = &self.eig.vectors;
        let n = v.dim();
        let phases: Vec<C64> = self.eig.values.iter().map(|&e| cis(-e * t)).collect();
        Operator::from_fn(v.space(), |i, j| (0..n).map(|k| v.get(i, k) * phases[k] * v.get(j, k).conj()).sum())
    }
}

/// One-shot `e^{−iHt} ψ`.
pub fn evolve(h: &Operator, psi: &Ket, t: f64) -> Result<Ket> {
    if psi.space() != h.space() {
        return Err(Error::SpaceMismatch);
    }
    if t == 0.0 {
        return Ok(psi.clone());
    }
    Propagator::new(h)?.evolve(psi, t)
}

/// Reference frame in which amplitudes are reported.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Frame {
    /// Raw Schrödinger-picture amplitudes.
    #[default]
    Lab,
    /// Frame rotating with a diagonal reference Hamiltonian `H_ref`: the
    /// reported state is `e^{+iH_ref t} ψ(t)`. Holds the diagonal of `H_ref`.
    CoRotating(Vec<f64>),
}

impl Frame {
    /// Frame co-rotating with a diagonal Hermitian operator.
    pub fn co_rotating(h_ref: &Operator) -> Result<Self> {
        if !h_ref.is_diagonal() || h_ref.hermiticity_residual() > 0.0 {
            return Err(Error::NonDiagonalFrame);
        }
        Ok(Frame::CoRotating(h_ref.diagonal().iter().map(|z| z.re).collect()))
    }

    /// Maps a lab-frame state at time `t` into this frame.
    pub fn apply(&self, psi: &Ket, t: f64) -> Result<Ket> {
        match self {
            Frame::Lab => Ok(psi.clone()),
            Frame::CoRotating(energies) => {
                if energies.len() != psi.space().total_dim() {
                    return Err(Error::DimensionMismatch { expected: psi.space().total_dim(), found: energies.len() });
                }
                let amps = psi.amplitudes().iter().zip(energies).map(|(a, &e)| a * cis(e * t)).collect();
                Ok(Ket::from_unitary_image(psi.space(), amps))
            }
        }
    }
}
