use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::ket::dot;
use super::{HilbertSpace, Ket};
use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square matrix acting on a [`HilbertSpace`], stored row-major.
///
/// The arithmetic operator impls (`&a + &b`, `&a * &b`, ...) panic when the
/// operands live on different spaces; use [`Operator::try_mul`] and friends
/// for a checked variant.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    data: Vec<C64>,
}

impl Operator {
    pub fn zeros(space: &HilbertSpace) -> Self {
        let n = space.total_dim();
        Self { space: space.clone(), data: vec![ZERO; n * n] }
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let mut op = Self::zeros(space);
        for i in 0..op.dim() {
            op.set(i, i, ONE);
        }
        op
    }

    pub fn from_fn(space: &HilbertSpace, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let n = space.total_dim();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { space: space.clone(), data }
    }

    /// Row-major matrix elements.
    pub fn from_rows(space: &HilbertSpace, data: Vec<C64>) -> Result<Self> {
        let n = space.total_dim();
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        Ok(Self { space: space.clone(), data })
    }

    pub fn from_diagonal(space: &HilbertSpace, diag: &[f64]) -> Result<Self> {
        if diag.len() != space.total_dim() {
            return Err(Error::DimensionMismatch { expected: space.total_dim(), found: diag.len() });
        }
        let mut op = Self::zeros(space);
        for (i, &d) in diag.iter().enumerate() {
            op.set(i, i, C64::new(d, 0.0));
        }
        Ok(op)
    }

    /// `|to⟩⟨from|` on a single `dim`-level system.
    pub fn transition(dim: usize, to: usize, from: usize) -> Result<Self> {
        let space = HilbertSpace::qudits(&[dim])?;
        if to >= dim || from >= dim {
            return Err(Error::LevelOutOfRange { index: 0, level: to.max(from), dim });
        }
        let mut op = Self::zeros(&space);
        op.set(to, from, ONE);
        Ok(op)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        let n = self.dim();
        self.data[i * n + j] = value;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j) == ZERO))
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim();
        Self::from_fn(&self.space, |i, j| self.data[j * n + i].conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { space: self.space.clone(), data: self.data.iter().map(|&x| x * c).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus, `‖M‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// `‖M − M†‖_max`
    pub fn hermiticity_residual(&self) -> f64 {
        self.residual_against_adjoint(-1.0)
    }

    /// `‖M + M†‖_max`
    pub fn anti_hermiticity_residual(&self) -> f64 {
        self.residual_against_adjoint(1.0)
    }

    fn residual_against_adjoint(&self, sign: f64) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let r = (self.get(i, j) + self.get(j, i).conj() * sign).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    pub fn try_mul(&self, rhs: &Operator) -> Result<Operator> {
        self.same_space(rhs)?;
        let n = self.dim();
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { space: self.space.clone(), data: out })
    }

    pub fn try_add(&self, rhs: &Operator) -> Result<Operator> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Operator) -> Result<Operator> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Operator, f: impl Fn(C64, C64) -> C64) -> Result<Operator> {
        self.same_space(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { space: self.space.clone(), data })
    }

    fn same_space(&self, rhs: &Operator) -> Result<()> {
        if self.space != rhs.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// Matrix-vector product on raw amplitudes.
    pub fn act(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length does not match operator dimension");
        (0..n).map(|i| self.data[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Applies a unitary to a state. The result is not renormalized.
    pub fn apply(&self, psi: &Ket) -> Result<Ket> {
        if psi.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(Ket::from_unitary_image(&self.space, self.act(psi.amplitudes())))
    }

    /// Kronecker product `self ⊗ rhs` on the tensor-product space.
    pub fn kron(&self, rhs: &Operator) -> Operator {
        let space = self.space.tensor(&rhs.space);
        let (n, m) = (self.dim(), rhs.dim());
        Operator::from_fn(&space, |i, j| self.data[(i / m) * n + j / m] * rhs.data[(i % m) * m + j % m])
    }

    /// Dense copy of the sub-matrix on the given basis indices.
    pub fn block(&self, indices: &[usize]) -> Vec<C64> {
        let mut out = Vec::with_capacity(indices.len() * indices.len());
        for &i in indices {
            for &j in indices {
                out.push(self.get(i, j));
            }
        }
        out
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &'a Operator) -> Operator {
        self.try_add(rhs).expect("operator addition across different spaces")
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &'a Operator) -> Operator {
        self.try_sub(rhs).expect("operator subtraction across different spaces")
    }
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &'a Operator) -> Operator {
        self.try_mul(rhs).expect("operator product across different spaces")
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<C64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: C64) -> Operator {
        self.scale(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Places a single-factor operator at position `index` of `space`, with
/// identities on every other factor.
pub fn embed(local: &Operator, index: usize, space: &HilbertSpace) -> Result<Operator> {
    let d = space.dim(index)?;
    if local.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: local.dim() });
    }
    let stride = space.stride(index);
    let mut out = Operator::zeros(space);
    for i in 0..space.total_dim() {
        let li = space.level(i, index);
        let base = i - li * stride;
        for lj in 0..d {
            let v = local.get(li, lj);
            if v != ZERO {
                out.set(i, base + lj * stride, v);
            }
        }
    }
    Ok(out)
}

/// Truncated bosonic annihilation operator on `n_max + 1` Fock levels.
pub fn annihilation(n_max: usize) -> Result<Operator> {
    if n_max == 0 {
        return Err(Error::InvalidTruncation);
    }
    let space = HilbertSpace::new(vec![super::Factor::Mode { n_max }])?;
    let mut a = Operator::zeros(&space);
    for n in 1..=n_max {
        a.set(n - 1, n, C64::new(sqrt(n as f64), 0.0));
    }
    Ok(a)
}

/// `AB − BA`
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

pub fn dagger(a: &Operator) -> Operator {
    a.dagger()
}

/// `⟨ψ|A|ψ⟩`
pub fn expectation(a: &Operator, psi: &Ket) -> Result<C64> {
    if a.space() != psi.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(dot(psi.amplitudes(), &a.act(psi.amplitudes())))
}
