//! Simulation core for a cavity-QED interface between two atomic qubits and a
//! four-level atom (ququart) sharing two orthogonally polarized cavity modes.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is dense linear algebra
//! over complex doubles; the largest space used is 2·2·4·(n_max+1)².
//!
//! Layout of the crate:
//!
//! * [`hilbert`]: tensor-product bookkeeping, [`Ket`] and [`Operator`].
//! * [`hamiltonian`]: the full, Schrieffer–Wolff and effective Hamiltonians.
//! * [`dynamics`]: Hermitian eigendecomposition and exact time evolution.
//! * [`oracle`]: closed-form block solutions and the typo ledger.
//! * [`protocols`]: state transfer, AMES preparation and teleportation.
//!
//! Units: angular frequencies in rad/s, times in seconds, ħ = 1.
#![no_std]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod hamiltonian;
pub mod hilbert;
pub mod oracle;
pub mod protocols;

mod math;

pub use error::{Error, Result};
pub use hilbert::{build_space, Factor, HilbertSpace, Ket, Operator};

/// Complex double used for every amplitude and matrix element.
pub type C64 = num_complex::Complex64;
