//! Hermitian eigendecomposition.
//!
//! The matrix is first split into the connected components of its non-zero
//! pattern (every model Hamiltonian here conserves an excitation number, so
//! the components are small), then each block is diagonalized by cyclic
//! complex Jacobi rotations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hilbert::Operator;
use crate::math::{abs, sqrt};
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const MAX_SWEEPS: usize = 100;

/// Accepted `‖H − H†‖_max`, relative to `max(1, ‖H‖_max)`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order and the matching eigenvectors as the
/// columns of a unitary operator.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: Operator,
}

impl EigenSystem {
    /// `‖H V − V diag(E)‖_max`
    pub fn reconstruction_residual(&self, h: &Operator) -> f64 {
        let hv = h * &self.vectors;
        let n = h.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                let r = hv.get(i, k) - self.vectors.get(i, k) * self.values[k];
                worst = worst.max(r.norm());
            }
        }
        worst
    }

    /// `‖V†V − 1‖_max`
    pub fn orthonormality_residual(&self) -> f64 {
        let g = &self.vectors.dagger() * &self.vectors;
        (&g - &Operator::identity(g.space())).max_abs()
    }
}

pub fn hermitian_eig(h: &Operator) -> Result<EigenSystem> {
    let residual = h.hermiticity_residual();
    if residual > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.dim();
    let mut values = vec![0.0; n];
    let mut vectors = Operator::zeros(h.space());

    for block in connected_blocks(h) {
        let m = block.len();
        let mut a = h.block(&block);
        // work relative to the mean diagonal to keep rotations well scaled
        let shift = block.iter().map(|&i| h.get(i, i).re).sum::<f64>() / m as f64;
        for k in 0..m {
            a[k * m + k] = C64::new(a[k * m + k].re - shift, 0.0);
        }
        let mut v = vec![ZERO; m * m];
        for k in 0..m {
            v[k * m + k] = C64::new(1.0, 0.0);
        }
        jacobi(&mut a, &mut v, m)?;
        for (col, &gi) in block.iter().enumerate() {
            values[gi] = a[col * m + col].re + shift;
            for (row, &gr) in block.iter().enumerate() {
                vectors.set(gr, gi, v[row * m + col]);
            }
        }
    }

    // ascending order; ties keep the basis order of their first component
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[x].partial_cmp(&values[y]).unwrap_or(core::cmp::Ordering::Equal));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = Operator::from_fn(h.space(), |i, j| vectors.get(i, order[j]));
    Ok(EigenSystem { values: sorted_values, vectors: sorted_vectors })
}

/// Index sets of the connected components of the non-zero pattern.
fn connected_blocks(h: &Operator) -> Vec<Vec<usize>> {
    let n = h.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if h.get(i, j) != ZERO || h.get(j, i) != ZERO {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

/// Cyclic Jacobi on a row-major `m × m` Hermitian matrix. On return `a` is
/// diagonal and `v` holds the eigenvectors in its columns.
fn jacobi(a: &mut [C64], v: &mut [C64], m: usize) -> Result<()> {
    if m == 1 {
        return Ok(());
    }
    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let off_norm = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for p in 0..m {
            for q in (p + 1)..m {
                s += a[p * m + q].norm_sqr();
            }
        }
        sqrt(2.0 * s)
    };
    let target = f64::EPSILON * sqrt(total);

    for _ in 0..MAX_SWEEPS {
        if off_norm(a) <= target {
            return Ok(());
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * m + p].re;
                let aqq = a[q * m + q].re;
                // negligible against both diagonal entries: drop it
                if r <= f64::EPSILON * 1e-3 * (abs(app) + abs(aqq)).max(f64::MIN_POSITIVE) {
                    a[p * m + q] = ZERO;
                    a[q * m + p] = ZERO;
                    continue;
                }
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau == 0.0 { 1.0 } else { tau.signum() / (abs(tau) + sqrt(1.0 + tau * tau)) };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = t * c;
                // U = [[c, s], [−s e, c e]] with e = e^{−iφ}, apq = r e^{iφ}
                let e = (apq / r).conj();
                let (u_qp, u_qq) = (-e * s, e * c);
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = akp * c + akq * u_qp;
                    a[k * m + q] = akp * s + akq * u_qq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = apk * c + aqk * u_qp.conj();
                    a[q * m + k] = apk * s + aqk * u_qq.conj();
                }
                a[p * m + q] = ZERO;
                a[q * m + p] = ZERO;
                a[p * m + p] = C64::new(app - t * r, 0.0);
                a[q * m + q] = C64::new(aqq + t * r, 0.0);
                for k in 0..m {
                    let vkp = v[k * m + p];
                    let vkq = v[k * m + q];
                    v[k * m + p] = vkp * c + vkq * u_qp;
                    v[k * m + q] = vkp * s + vkq * u_qq;
                }
            }
        }
    }
    let off = off_norm(a);
    if off <= 1e3 * target {
        Ok(())
    } else {
        Err(Error::NoConvergence { off_norm: off })
    }
}
