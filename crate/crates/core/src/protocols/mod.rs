//! End-to-end protocols: two-qubit → ququart state transfer, preparation of
//! the asymmetric maximally entangled state (AMES) of two qubits and a
//! ququart, and teleportation through that state.
//!
//! Transfer and AMES preparation are deterministic unitary procedures; only
//! teleportation involves measurement.

mod ames;
mod states;
mod teleport;
mod transfer;
mod validation;

pub use ames::{
    aligning_phases, ames_components, ames_initial, ames_sensitivity_scan, ames_target, correction_gates, prepare_ames,
    AmesMode, AmesPreparation, AmesProtocol, AmesScan, ScanAxis, ScanPoint, AMES_LEVELS,
};
pub use states::{QubitPairState, QuquartState};
pub use teleport::{
    average_fidelity, bell_basis, bell_measure, derive_correction_table, derive_reverse_correction_table,
    entanglement_fidelity, generalized_bell, generalized_bell_measure, ideal_resource, reverse_all_branches,
    reverse_teleport, teleport, teleport_all_branches, teleport_channel, Bell, BellOutcome, Branch, BranchResult,
    CorrectionTable, Matrix4, PairMeasurement, ReverseTeleportation, Teleportation,
};
pub use transfer::{
    transfer, transfer_input, transfer_target, transfer_time, Transfer, TransferReport, TransferVariant,
};

pub use validation::{cavity_input, validate_effective, SectorDeviation, ValidationReport};
