use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One tensor factor: a finite-level system or a truncated bosonic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    Qudit(usize),
    Mode { n_max: usize },
}

impl Factor {
    pub fn dim(self) -> usize {
        match self {
            Factor::Qudit(d) => d,
            Factor::Mode { n_max } => n_max + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    factors: Vec<Factor>,
    strides: Vec<usize>,
    total_dim: usize,
}

impl HilbertSpace {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (index, f) in factors.iter().enumerate() {
            if let Factor::Qudit(dim) = *f {
                if dim < 2 {
                    return Err(Error::InvalidDimension { index, dim });
                }
            }
        }
        let mut strides = vec![1usize; factors.len()];
        for k in (0..factors.len() - 1).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].dim();
        }
        let total_dim = strides[0] * factors[0].dim();
        Ok(Self { factors, strides, total_dim })
    }

    /// Space made only of finite-level systems.
    pub fn qudits(dims: &[usize]) -> Result<Self> {
        Self::new(dims.iter().map(|&d| Factor::Qudit(d)).collect())
    }

    /// The 16-dimensional space of qubit A, qubit B and the ququart.
    pub fn atoms() -> Self {
        Self::qudits(&[2, 2, 4]).expect("static layout")
    }

    /// Atoms plus both cavity modes truncated at `n_max` photons.
    pub fn cavity(n_max: usize) -> Result<Self> {
        build_space(&[2, 2, 4], &[n_max, n_max])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim()).collect()
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn factor(&self, index: usize) -> Result<Factor> {
        self.factors.get(index).copied().ok_or(Error::FactorOutOfRange { index, len: self.factors.len() })
    }

    pub fn dim(&self, index: usize) -> Result<usize> {
        self.factor(index).map(Factor::dim)
    }

    pub(crate) fn stride(&self, index: usize) -> usize {
        self.strides[index]
    }

    /// Composite index of a product basis state.
    pub fn index_of(&self, levels: &[usize]) -> Result<usize> {
        if levels.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: levels.len() });
        }
        let mut idx = 0;
        for (k, (&level, f)) in levels.iter().zip(&self.factors).enumerate() {
            if level >= f.dim() {
                return Err(Error::LevelOutOfRange { index: k, level, dim: f.dim() });
            }
            idx += level * self.strides[k];
        }
        Ok(idx)
    }

    /// Level of factor `factor` in composite basis state `index`.
    #[inline]
    pub fn level(&self, index: usize, factor: usize) -> usize {
        (index / self.strides[factor]) % self.factors[factor].dim()
    }

    pub fn levels_of(&self, index: usize) -> Vec<usize> {
        (0..self.factors.len()).map(|k| self.level(index, k)).collect()
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &HilbertSpace) -> HilbertSpace {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        HilbertSpace::new(factors).expect("factors already validated")
    }

    /// True when factors 0..3 are qubit, qubit, ququart.
    pub fn has_atoms(&self) -> bool {
        self.factors.len() >= 3
            && self.factors[0] == Factor::Qudit(2)
            && self.factors[1] == Factor::Qudit(2)
            && self.factors[2] == Factor::Qudit(4)
    }

    /// Truncations of modes a and b when the space has the full cavity layout.
    pub fn mode_truncations(&self) -> Option<(usize, usize)> {
        if !self.has_atoms() || self.factors.len() != 5 {
            return None;
        }
        match (self.factors[3], self.factors[4]) {
            (Factor::Mode { n_max: na }, Factor::Mode { n_max: nb }) => Some((na, nb)),
            _ => None,
        }
    }
}

/// Builds the composite space with finite-level factors first (in the given
/// order) followed by one bosonic mode per entry of `mode_truncations`
/// (each entry is the highest Fock level kept).
pub fn build_space(qudit_dims: &[usize], mode_truncations: &[usize]) -> Result<HilbertSpace> {
    let mut factors: Vec<Factor> = qudit_dims.iter().map(|&d| Factor::Qudit(d)).collect();
    factors.extend(mode_truncations.iter().map(|&n_max| Factor::Mode { n_max }));
    HilbertSpace::new(factors)
}
