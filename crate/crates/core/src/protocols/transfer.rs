use alloc::vec::Vec;
use core::f64::consts::PI;

use super::states::QubitPairState;
use crate::dynamics::{Frame, Propagator};
use crate::error::{Error, Result};
use crate::hamiltonian::{bare_energy, effective_single_photon, effective_vacuum, phase_gate, SystemParams};
use crate::hilbert::layout::{QUBIT_A, QUBIT_B};
use crate::hilbert::{fidelity, HilbertSpace, Ket, Operator};
use crate::math::abs;
use crate::C64;

/// Which effective model drives the transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransferVariant {
    /// Both modes in vacuum; the transferred coefficients pick up signs.
    Vacuum,
    /// One photon in each mode; the Stark shift removes the signs.
    SinglePhoton,
    /// Vacuum model preceded by π phase gates on both qubits.
    VacuumWithPrecorrection,
}

impl TransferVariant {
    pub const ALL: [TransferVariant; 3] =
        [TransferVariant::Vacuum, TransferVariant::SinglePhoton, TransferVariant::VacuumWithPrecorrection];

    pub fn name(self) -> &'static str {
        match self {
            TransferVariant::Vacuum => "vacuum",
            TransferVariant::SinglePhoton => "single_photon",
            TransferVariant::VacuumWithPrecorrection => "vacuum_with_precorrection",
        }
    }
}

/// Outcome of one transfer run.
#[derive(Debug, Clone)]
pub struct TransferReport {
    pub variant: TransferVariant,
    /// `π/(2|λ|)`
    pub duration: f64,
    /// Final atomic state in the frame co-rotating with `ω_at` per excitation.
    pub final_state: Ket,
    /// Ququart amplitudes on `|gg1⟩..|gg4⟩` of the final state.
    pub ququart: [C64; 4],
    /// Fidelity against the ideal `C_gg|1⟩ + C_eg|2⟩ + C_ge|3⟩ + C_ee|4⟩`.
    pub fidelity: f64,
    /// Phase of each ququart amplitude relative to its target coefficient,
    /// with the common phase fixed by the largest component (radians).
    pub phase_profile: [f64; 4],
}

/// The atomic space and the ququart levels receiving `C_gg, C_ge, C_eg, C_ee`
/// (basis order of [`QubitPairState`]). The coupling graph links `|eg1⟩` with
/// `|gg2⟩` and `|ge1⟩` with `|gg3⟩`, so `C_eg → |2⟩` and `C_ge → |3⟩`.
const TARGET_LEVEL: [usize; 4] = [0, 2, 1, 3];

/// `π/(2|λ|)`
pub fn transfer_time(params: &SystemParams) -> Result<f64> {
    let l = params.lambda();
    if l == 0.0 {
        return Err(Error::InvalidParameter { name: "g_a", reason: "transfer needs a non-zero coupling".into() });
    }
    Ok(PI / (2.0 * abs(l)))
}

/// `|input⟩_AB ⊗ |1⟩_C` on the atomic space.
pub fn transfer_input(input: &QubitPairState) -> Ket {
    let space = HilbertSpace::atoms();
    let mut amps = alloc::vec![C64::new(0.0, 0.0); space.total_dim()];
    for (k, c) in input.amplitudes().iter().enumerate() {
        amps[space.index_of(&[k / 2, k % 2, 0]).expect("valid levels")] = *c;
    }
    Ket::from_amplitudes(&space, amps).expect("input is normalized")
}

/// Ideal transferred state `|gg⟩ ⊗ (C_gg|1⟩ + C_eg|2⟩ + C_ge|3⟩ + C_ee|4⟩)`.
pub fn transfer_target(input: &QubitPairState) -> Ket {
    let space = HilbertSpace::atoms();
    let mut amps = alloc::vec![C64::new(0.0, 0.0); space.total_dim()];
    for (k, c) in input.amplitudes().iter().enumerate() {
        amps[space.index_of(&[0, 0, TARGET_LEVEL[k]]).expect("valid levels")] = *c;
    }
    Ket::from_amplitudes(&space, amps).expect("input is normalized")
}

/// Reusable transfer setup for one parameter set and variant.
#[derive(Debug, Clone)]
pub struct Transfer {
    variant: TransferVariant,
    propagator: Propagator,
    frame: Frame,
    precorrection: Option<Operator>,
    hamiltonian: Operator,
    duration: f64,
}

impl Transfer {
    pub fn new(params: &SystemParams, variant: TransferVariant) -> Result<Self> {
        let hamiltonian = match variant {
            TransferVariant::SinglePhoton => effective_single_photon(params)?,
            TransferVariant::Vacuum | TransferVariant::VacuumWithPrecorrection => effective_vacuum(params)?,
        };
        let space = HilbertSpace::atoms();
        let precorrection = match variant {
            TransferVariant::VacuumWithPrecorrection => {
                Some(&phase_gate(&space, QUBIT_A, PI)? * &phase_gate(&space, QUBIT_B, PI)?)
            }
            _ => None,
        };
        Ok(Self {
            variant,
            propagator: Propagator::new(&hamiltonian)?,
            frame: Frame::co_rotating(&bare_energy(params, &space)?)?,
            precorrection,
            hamiltonian,
            duration: transfer_time(params)?,
        })
    }

    pub fn variant(&self) -> TransferVariant {
        self.variant
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// The effective Hamiltonian used by this variant.
    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    /// Frame in which results are reported.
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Initial atomic state, after the pre-correction gates when present.
    pub fn prepared(&self, input: &QubitPairState) -> Result<Ket> {
        let psi = transfer_input(input);
        match &self.precorrection {
            Some(gates) => gates.apply(&psi),
            None => Ok(psi),
        }
    }

    /// State after evolving the prepared input for `t`, in the reporting frame.
    pub fn state_at(&self, input: &QubitPairState, t: f64) -> Result<Ket> {
        let psi = self.propagator.evolve(&self.prepared(input)?, t)?;
        self.frame.apply(&psi, t)
    }

    pub fn run(&self, input: &QubitPairState) -> Result<TransferReport> {
        let final_state = self.state_at(input, self.duration)?;
        let space = final_state.space().clone();
        let mut ququart = [C64::new(0.0, 0.0); 4];
        for (q, slot) in ququart.iter_mut().enumerate() {
            *slot = final_state.amplitude(space.index_of(&[0, 0, q])?);
        }
        let fidelity = fidelity(&transfer_target(input), &final_state)?;
        let phase_profile = phase_profile(input, &ququart);
        Ok(TransferReport {
            variant: self.variant,
            duration: self.duration,
            final_state,
            ququart,
            fidelity,
            phase_profile,
        })
    }

    /// Fidelity to the input after evolving for twice the transfer time.
    pub fn round_trip_fidelity(&self, input: &QubitPairState) -> Result<f64> {
        let back = self.state_at(input, 2.0 * self.duration)?;
        fidelity(&self.prepared(input)?, &back)
    }

    /// Linear map from input coefficients (basis order `gg, ge, eg, ee`) to
    /// the target ordering `(C_gg, C_eg, C_ge, C_ee)` read off the ququart.
    /// The ideal transfer is the identity; `map[row][col]`.
    pub fn coefficient_map(&self) -> Result<[[C64; 4]; 4]> {
        let mut map = [[C64::new(0.0, 0.0); 4]; 4];
        for col in 0..4 {
            let mut basis = [C64::new(0.0, 0.0); 4];
            basis[col] = C64::new(1.0, 0.0);
            let report = self.run(&QubitPairState::new(basis)?)?;
            for (row, level) in TARGET_LEVEL.iter().enumerate() {
                map[row][col] = report.ququart[*level];
            }
        }
        Ok(map)
    }
}

fn phase_profile(input: &QubitPairState, ququart: &[C64; 4]) -> [f64; 4] {
    let c = input.amplitudes();
    let ratios: Vec<Option<C64>> =
        (0..4).map(|k| if c[k].norm() > 1e-12 { Some(ququart[TARGET_LEVEL[k]] / c[k]) } else { None }).collect();
    let reference = (0..4)
        .filter(|&k| ratios[k].is_some())
        .max_by(|&a, &b| c[a].norm().partial_cmp(&c[b].norm()).unwrap_or(core::cmp::Ordering::Equal))
        .and_then(|k| ratios[k]);
    let mut out = [0.0; 4];
    if let Some(r0) = reference {
        for k in 0..4 {
            if let Some(r) = ratios[k] {
                out[k] = (r / r0).arg();
            }
        }
    }
    out
}

/// Runs one transfer.
pub fn transfer(input: &QubitPairState, variant: TransferVariant, params: &SystemParams) -> Result<TransferReport> {
    Transfer::new(params, variant)?.run(input)
}
