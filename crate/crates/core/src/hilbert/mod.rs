//! Tensor-product Hilbert spaces, state vectors and dense operators.
//!
//! Composite indices are row-major over the factor list: the last factor
//! varies fastest. Qubit levels are `|g⟩ = 0`, `|e⟩ = 1`; ququart levels
//! `|1⟩..|4⟩` are indices `0..3`; Fock levels are `0..=n_max`.

mod ket;
mod operator;
mod space;

pub use ket::{fidelity, overlap, subsystem_population, subsystem_populations, Ket};
pub use operator::{annihilation, commutator, dagger, embed, expectation, Operator};
pub use space::{build_space, Factor, HilbertSpace};

/// Canonical factor positions of the cavity system.
pub mod layout {
    pub const QUBIT_A: usize = 0;
    pub const QUBIT_B: usize = 1;
    pub const QUQUART: usize = 2;
    pub const MODE_A: usize = 3;
    pub const MODE_B: usize = 4;

    pub const GROUND: usize = 0;
    pub const EXCITED: usize = 1;
}

/// Default tolerance on `|‖ψ‖ − 1|` for user-supplied states.
pub const NORM_TOL: f64 = 1e-12;
