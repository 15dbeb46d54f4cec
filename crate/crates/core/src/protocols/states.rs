use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hilbert::NORM_TOL;
use crate::math::{abs, sqrt};
use crate::C64;

fn check_norm(c: &[C64; 4]) -> Result<()> {
    let norm = sqrt(c.iter().map(|z| z.norm_sqr()).sum());
    if abs(norm - 1.0) > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn haar<R: Rng + ?Sized>(rng: &mut R) -> [C64; 4] {
    let mut c = [C64::new(0.0, 0.0); 4];
    for z in &mut c {
        *z = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    }
    let norm = sqrt(c.iter().map(|z| z.norm_sqr()).sum());
    c.map(|z| z / norm)
}

/// Normalized two-qubit state, stored in basis order `gg, ge, eg, ee`
/// (first letter is the first qubit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitPairState {
    c: [C64; 4],
}

impl QubitPairState {
    /// From amplitudes in basis order `gg, ge, eg, ee`.
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        check_norm(&amplitudes)?;
        Ok(Self { c: amplitudes })
    }

    /// From `C_gg|gg⟩ + C_eg|eg⟩ + C_ge|ge⟩ + C_ee|ee⟩`.
    pub fn from_coefficients(c_gg: C64, c_eg: C64, c_ge: C64, c_ee: C64) -> Result<Self> {
        Self::new([c_gg, c_ge, c_eg, c_ee])
    }

    /// Haar-random state.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self { c: haar(rng) }
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        self.c
    }

    pub fn c_gg(&self) -> C64 {
        self.c[0]
    }

    pub fn c_ge(&self) -> C64 {
        self.c[1]
    }

    pub fn c_eg(&self) -> C64 {
        self.c[2]
    }

    pub fn c_ee(&self) -> C64 {
        self.c[3]
    }
}

/// Normalized ququart state `c₁|1⟩ + c₂|2⟩ + c₃|3⟩ + c₄|4⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuquartState {
    c: [C64; 4],
}

impl QuquartState {
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        check_norm(&amplitudes)?;
        Ok(Self { c: amplitudes })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self { c: haar(rng) }
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        self.c
    }
}

/// `|⟨a|b⟩|²` for four-component amplitude vectors.
pub(crate) fn fidelity4(a: &[C64; 4], b: &[C64; 4]) -> f64 {
    let o: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    o.norm_sqr().min(1.0)
}
