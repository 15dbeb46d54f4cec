use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{HilbertSpace, NORM_TOL};
use crate::error::{Error, Result};
use crate::math::{abs, sqrt};
use crate::C64;

/// Normalized pure state on a [`HilbertSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    space: HilbertSpace,
    amps: Vec<C64>,
}

impl Ket {
    pub fn basis(space: &HilbertSpace, levels: &[usize]) -> Result<Self> {
        let idx = space.index_of(levels)?;
        Self::basis_index(space, idx)
    }

    pub fn basis_index(space: &HilbertSpace, index: usize) -> Result<Self> {
        let n = space.total_dim();
        if index >= n {
            return Err(Error::DimensionMismatch { expected: n, found: index });
        }
        let mut amps = vec![C64::new(0.0, 0.0); n];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { space: space.clone(), amps })
    }

    /// Wraps amplitudes that are already normalized to within [`NORM_TOL`].
    pub fn from_amplitudes(space: &HilbertSpace, amps: Vec<C64>) -> Result<Self> {
        check_len(space, amps.len())?;
        let norm = norm_of(&amps);
        if abs(norm - 1.0) > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { space: space.clone(), amps })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(space: &HilbertSpace, mut amps: Vec<C64>) -> Result<Self> {
        check_len(space, amps.len())?;
        let norm = norm_of(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { space: space.clone(), amps })
    }

    /// Amplitudes produced by a norm-preserving map of a normalized state.
    pub(crate) fn from_unitary_image(space: &HilbertSpace, amps: Vec<C64>) -> Self {
        debug_assert_eq!(space.total_dim(), amps.len());
        Self { space: space.clone(), amps }
    }

    /// Haar-random state.
    pub fn random<R: Rng + ?Sized>(space: &HilbertSpace, rng: &mut R) -> Self {
        let amps: Vec<C64> =
            (0..space.total_dim()).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        Self::normalized(space, amps).expect("gaussian vector is non-zero")
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    pub fn tensor(&self, other: &Ket) -> Ket {
        let space = self.space.tensor(&other.space);
        let mut amps = Vec::with_capacity(space.total_dim());
        for &a in &self.amps {
            amps.extend(other.amps.iter().map(|&b| a * b));
        }
        Ket { space, amps }
    }
}

fn check_len(space: &HilbertSpace, len: usize) -> Result<()> {
    if len != space.total_dim() {
        return Err(Error::DimensionMismatch { expected: space.total_dim(), found: len });
    }
    Ok(())
}

pub(crate) fn norm_of(v: &[C64]) -> f64 {
    sqrt(v.iter().map(|a| a.norm_sqr()).sum())
}

pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨ψ|φ⟩`
pub fn overlap(psi: &Ket, phi: &Ket) -> Result<C64> {
    if psi.space != phi.space {
        return Err(Error::SpaceMismatch);
    }
    Ok(dot(&psi.amps, &phi.amps))
}

/// `|⟨ψ|φ⟩|²`
pub fn fidelity(psi: &Ket, phi: &Ket) -> Result<f64> {
    overlap(psi, phi).map(|z| z.norm_sqr().min(1.0))
}

/// Probability that factor `index` is found in `level`.
pub fn subsystem_population(psi: &Ket, index: usize, level: usize) -> Result<f64> {
    let dim = psi.space.dim(index)?;
    if level >= dim {
        return Err(Error::LevelOutOfRange { index, level, dim });
    }
    Ok(psi
        .amps
        .iter()
        .enumerate()
        .filter(|(i, _)| psi.space.level(*i, index) == level)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Populations of every level of factor `index`.
pub fn subsystem_populations(psi: &Ket, index: usize) -> Result<Vec<f64>> {
    let dim = psi.space.dim(index)?;
    let mut pops = vec![0.0; dim];
    for (i, a) in psi.amps.iter().enumerate() {
        pops[psi.space.level(i, index)] += a.norm_sqr();
    }
    Ok(pops)
}
