use alloc::string::String;

use crate::error::{Error, Result};
use crate::hilbert::{build_space, HilbertSpace};
use crate::math::{abs, sqrt};

/// Physical parameters shared by every model (angular frequencies, rad/s).
///
/// The mode-b coupling is not free: it is derived from `g_a`, the detuning
/// `Δ = ω_op − ω_at` and the mismatch `δ` so that
/// `λ' = g_A²/(Δ − δ/2) = g_B²/(Δ + δ/2)` holds by construction. With `δ = 0`
/// this gives `g_B = g_A` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    omega_op: f64,
    omega_at: f64,
    g_a: f64,
    g_b: f64,
    delta: f64,
    n_max: usize,
}

fn invalid(name: &'static str, reason: &str) -> Error {
    Error::InvalidParameter { name, reason: String::from(reason) }
}

fn finite(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(name, "must be finite"))
    }
}

impl SystemParams {
    /// `n_max` is the highest Fock level kept per cavity mode.
    pub fn new(omega_op: f64, omega_at: f64, g_a: f64, delta: f64, n_max: usize) -> Result<Self> {
        let omega_op = finite("omega_op", omega_op)?;
        let omega_at = finite("omega_at", omega_at)?;
        let delta = finite("delta", delta)?;
        if finite("g_a", g_a)? < 0.0 {
            return Err(invalid("g_a", "must be non-negative"));
        }
        if n_max == 0 {
            return Err(Error::InvalidTruncation);
        }
        let g_b = derive_g_b(g_a, omega_op - omega_at, delta)?;
        Ok(Self { omega_op, omega_at, g_a, g_b, delta, n_max })
    }

    /// Parameters fixed by the effective coupling `λ'` instead of `g_A`.
    pub fn from_lambda_prime(
        omega_op: f64,
        omega_at: f64,
        lambda_prime: f64,
        delta: f64,
        n_max: usize,
    ) -> Result<Self> {
        let detuning = finite("omega_op", omega_op)? - finite("omega_at", omega_at)?;
        let g_sq = finite("lambda_prime", lambda_prime)? * (detuning - finite("delta", delta)? / 2.0);
        if g_sq < 0.0 || !g_sq.is_finite() {
            return Err(invalid("lambda_prime", "must have the sign of Δ − δ/2"));
        }
        Self::new(omega_op, omega_at, sqrt(g_sq), delta, n_max)
    }

    /// Same parameters with every second-order coupling (`λ`, `λ'`)
    /// multiplied by `scale`, i.e. `g_A → √scale·g_A`.
    pub fn with_lambda_scale(&self, scale: f64) -> Result<Self> {
        if finite("scale", scale)? < 0.0 {
            return Err(invalid("scale", "must be non-negative"));
        }
        Self::new(self.omega_op, self.omega_at, self.g_a * sqrt(scale), self.delta, self.n_max)
    }

    pub fn with_n_max(&self, n_max: usize) -> Result<Self> {
        Self::new(self.omega_op, self.omega_at, self.g_a, self.delta, n_max)
    }

    pub fn omega_op(&self) -> f64 {
        self.omega_op
    }

    pub fn omega_at(&self) -> f64 {
        self.omega_at
    }

    pub fn g_a(&self) -> f64 {
        self.g_a
    }

    pub fn g_b(&self) -> f64 {
        self.g_b
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `Δ = ω_op − ω_at`
    pub fn detuning(&self) -> f64 {
        self.omega_op - self.omega_at
    }

    /// `λ = −g_A²/Δ`, the resonant dispersive coupling (negative for Δ > 0).
    pub fn lambda(&self) -> f64 {
        -self.g_a * self.g_a / self.detuning()
    }

    /// `−g_B²/Δ`; equals [`lambda`](Self::lambda) when `δ = 0`.
    pub fn lambda_b(&self) -> f64 {
        -self.g_b * self.g_b / self.detuning()
    }

    /// `λ' = g_A²/(Δ − δ/2)`
    pub fn lambda_prime(&self) -> f64 {
        self.g_a * self.g_a / (self.detuning() - self.delta / 2.0)
    }

    /// `g_B²/(Δ + δ/2)`; equal to [`lambda_prime`](Self::lambda_prime) up to rounding.
    pub fn lambda_prime_b(&self) -> f64 {
        self.g_b * self.g_b / (self.detuning() + self.delta / 2.0)
    }

    /// `ω_A = ω_at − δ/2`
    pub fn omega_a(&self) -> f64 {
        self.omega_at - self.delta / 2.0
    }

    /// `ω_B = ω_at + δ/2`
    pub fn omega_b(&self) -> f64 {
        self.omega_at + self.delta / 2.0
    }

    /// `Ω = √(δ² + 4λ'²)`
    pub fn rabi_frequency(&self) -> f64 {
        let lp = self.lambda_prime();
        sqrt(self.delta * self.delta + 4.0 * lp * lp)
    }

    /// The dispersive regime required by the effective models:
    /// `Δ ≠ 0` and `|Δ| ≥ 10·max(g_A, g_B)`.
    pub fn check_far_detuned(&self) -> Result<()> {
        let d = self.detuning();
        if d == 0.0 {
            return Err(Error::ZeroDetuning);
        }
        let limit = 10.0 * self.g_a.max(self.g_b);
        // boundary values such as Δ = 10g must survive round-off
        if abs(d) < limit * (1.0 - GUARD_RTOL) {
            return Err(Error::DetuningGuard { detuning: abs(d), limit });
        }
        Ok(())
    }

    /// The small-mismatch regime `|δ| ≤ |Δ|/10`.
    pub fn check_mismatch(&self) -> Result<()> {
        let limit = abs(self.detuning()) / 10.0;
        if abs(self.delta) > limit * (1.0 + GUARD_RTOL) {
            return Err(Error::MismatchGuard { delta: abs(self.delta), limit });
        }
        Ok(())
    }

    /// Qubit A, qubit B, ququart, mode a, mode b (each mode truncated at `n_max`).
    pub fn cavity_space(&self) -> HilbertSpace {
        build_space(&[2, 2, 4], &[self.n_max, self.n_max]).expect("n_max validated at construction")
    }
}

/// Relative slack on the regime guards.
const GUARD_RTOL: f64 = 1e-12;

fn derive_g_b(g_a: f64, detuning: f64, delta: f64) -> Result<f64> {
    if delta == 0.0 {
        return Ok(g_a);
    }
    let ratio = (detuning + delta / 2.0) / (detuning - delta / 2.0);
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(invalid("delta", "Δ − δ/2 and Δ + δ/2 must be non-zero with equal sign"));
    }
    Ok(g_a * sqrt(ratio))
}
