use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::hilbert::{HilbertSpace, Operator};
use crate::math::{cis, sqrt};
use crate::C64;

/// Labels of the double-excitation subspace, in block order.
pub const DOUBLE_LABELS: [&str; 4] = ["ee1", "ge2", "eg3", "gg4"];
/// Labels of the mode-a single-excitation subspace, in block order.
pub const SINGLE_LABELS: [&str; 2] = ["eg1", "gg2"];

/// Photon sector of a single-excitation block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhotonSector {
    Vacuum,
    SinglePhoton,
}

/// Closed-form solution of one invariant block of an effective Hamiltonian.
///
/// Eigenvalues and eigenvectors come from analytic formulas, not from a
/// numerical diagonalization, so the block can serve as an independent
/// reference for the propagator. Eigenvectors are the columns of
/// `eigenvectors`, paired with `eigenvalues` in order (not sorted).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSolution {
    pub basis_labels: Vec<&'static str>,
    pub matrix: Operator,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Operator,
}

fn block_space(n: usize) -> HilbertSpace {
    HilbertSpace::qudits(&[n]).expect("block dimension ≥ 2")
}

fn real_matrix(n: usize, rows: &[f64]) -> Operator {
    Operator::from_rows(&block_space(n), rows.iter().map(|&x| C64::new(x, 0.0)).collect()).expect("square")
}

/// Columns given as rows of `cols`.
fn from_columns(n: usize, cols: &[Vec<f64>]) -> Operator {
    Operator::from_fn(&block_space(n), |i, j| C64::new(cols[j][i], 0.0))
}

impl BlockSolution {
    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    /// Position of a basis label in the block.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| *l == label)
    }

    /// Amplitudes `⟨k|e^{−iMt}|initial⟩` from the analytic eigenpairs.
    pub fn amplitudes_from(&self, initial: usize, t: f64) -> Vec<C64> {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<C64> = (0..n).map(|m| v.get(initial, m).conj() * cis(-self.eigenvalues[m] * t)).collect();
        (0..n).map(|k| (0..n).map(|m| v.get(k, m) * weights[m]).sum()).collect()
    }

    /// Amplitudes starting from the first basis state.
    pub fn amplitudes(&self, t: f64) -> Vec<C64> {
        self.amplitudes_from(0, t)
    }

    /// `‖M V − V diag(E)‖_max`
    pub fn reconstruction_residual(&self) -> f64 {
        let mv = &self.matrix * &self.eigenvectors;
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                worst = worst.max((mv.get(i, k) - self.eigenvectors.get(i, k) * self.eigenvalues[k]).norm());
            }
        }
        worst
    }
}

/// Double-excitation block of the resonant effective models,
/// `(2ω + 2λ)·1 + λ·M` with `M` coupling `ee1 ↔ {ge2, eg3} ↔ gg4`.
///
/// Eigenvectors are the sign patterns `½(±1, ±1, ±1, 1)`; the spectrum is
/// `{2ω, 2ω + 2λ, 2ω + 2λ, 2ω + 4λ}`.
pub fn vac_double_block(omega_at: f64, lambda: f64) -> BlockSolution {
    let d = 2.0 * omega_at + 2.0 * lambda;
    let l = lambda;
    #[rustfmt::skip]
    let matrix = real_matrix(4, &[
        d, l, l, 0.0,
        l, d, 0.0, l,
        l, 0.0, d, l,
        0.0, l, l, d,
    ]);
    let cols =
        [vec![0.5, -0.5, -0.5, 0.5], vec![-0.5, -0.5, 0.5, 0.5], vec![-0.5, 0.5, -0.5, 0.5], vec![0.5, 0.5, 0.5, 0.5]];
    BlockSolution {
        basis_labels: DOUBLE_LABELS.to_vec(),
        matrix,
        eigenvalues: vec![2.0 * omega_at, d, d, 2.0 * omega_at + 4.0 * lambda],
        eigenvectors: from_columns(4, &cols),
    }
}

/// Closed-form evolution of `|ee1⟩` in the resonant double-excitation block,
/// including the global phase `e^{−i2ωt}`.
pub fn vac_double_from_ee1(omega_at: f64, lambda: f64, t: f64) -> [C64; 4] {
    let e2 = cis(-2.0 * lambda * t);
    let e4 = cis(-4.0 * lambda * t);
    let g = cis(-2.0 * omega_at * t) * 0.25;
    let one = C64::new(1.0, 0.0);
    [g * (one + e2 * 2.0 + e4), g * (e4 - one), g * (e4 - one), g * (one - e2 * 2.0 + e4)]
}

/// Mode-a single-excitation block `{eg1, gg2}`:
/// `[[ω + λ, λ], [λ, ω + λ]]` in vacuum and `[[ω − λ, λ], [λ, ω − λ]]` with
/// one photon per mode.
pub fn vac_single_block(omega_at: f64, lambda: f64, sector: PhotonSector) -> BlockSolution {
    let d = match sector {
        PhotonSector::Vacuum => omega_at + lambda,
        PhotonSector::SinglePhoton => omega_at - lambda,
    };
    let s = FRAC_1_SQRT_2;
    BlockSolution {
        basis_labels: SINGLE_LABELS.to_vec(),
        matrix: real_matrix(2, &[d, lambda, lambda, d]),
        eigenvalues: vec![d + lambda, d - lambda],
        eigenvectors: from_columns(2, &[vec![s, s], vec![s, -s]]),
    }
}

/// Closed-form evolution of `|eg1⟩` in a single-excitation block, including
/// the global phase `e^{−iωt}`.
pub fn vac_single_from_eg1(omega_at: f64, lambda: f64, sector: PhotonSector, t: f64) -> [C64; 2] {
    let g = cis(-omega_at * t) * 0.5;
    let one = C64::new(1.0, 0.0);
    match sector {
        PhotonSector::Vacuum => {
            let e = cis(-2.0 * lambda * t);
            [g * (e + one), g * (e - one)]
        }
        PhotonSector::SinglePhoton => {
            let e = cis(2.0 * lambda * t);
            [g * (one + e), g * (one - e)]
        }
    }
}

/// Double-excitation block of the mismatched model with coupling
/// `κ = −λ'`: diagonal `(ω_A + ω_B, 2ω_B, 2ω_A, ω_A + ω_B) + 2κ`, off-diagonal
/// `κ` in the same pattern as the resonant block.
///
/// With `c = ω_A + ω_B + 2κ` and `Ω = √(δ² + 4κ²)` (`δ = ω_B − ω_A`) the
/// eigenpairs are `c ± Ω ↔ (2κ, δ ± Ω, ±Ω − δ, 2κ)/(2Ω)` and the doubly
/// degenerate `c ↔ (1, 0, 0, −1)/√2, (δ, −2κ, 2κ, δ)/(√2Ω)`.
pub fn mismatch_block(delta: f64, lambda_prime: f64, omega_a: f64, omega_b: f64) -> BlockSolution {
    let k = -lambda_prime;
    let c = omega_a + omega_b + 2.0 * k;
    #[rustfmt::skip]
    let matrix = real_matrix(4, &[
        omega_a + omega_b + 2.0 * k, k, k, 0.0,
        k, 2.0 * omega_b + 2.0 * k, 0.0, k,
        k, 0.0, 2.0 * omega_a + 2.0 * k, k,
        0.0, k, k, omega_a + omega_b + 2.0 * k,
    ]);
    let omega = sqrt(delta * delta + 4.0 * k * k);
    let s = FRAC_1_SQRT_2;
    let cols: Vec<Vec<f64>> = if omega == 0.0 {
        // uncoupled and degenerate: any basis diagonalizes the block
        (0..4).map(|j| (0..4).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    } else {
        let n = 2.0 * omega;
        let m = sqrt(2.0) * omega;
        vec![
            vec![2.0 * k / n, (delta + omega) / n, (omega - delta) / n, 2.0 * k / n],
            vec![s, 0.0, 0.0, -s],
            vec![delta / m, -2.0 * k / m, 2.0 * k / m, delta / m],
            vec![2.0 * k / n, (delta - omega) / n, (-omega - delta) / n, 2.0 * k / n],
        ]
    };
    BlockSolution {
        basis_labels: DOUBLE_LABELS.to_vec(),
        matrix,
        eigenvalues: vec![c + omega, c, c, c - omega],
        eigenvectors: from_columns(4, &cols),
    }
}
