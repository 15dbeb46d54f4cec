use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a Hilbert space needs at least one factor")]
    EmptySpace,
    #[error("factor {index} has invalid dimension {dim}")]
    InvalidDimension { index: usize, dim: usize },
    #[error("factor index {index} out of range ({len} factors)")]
    FactorOutOfRange { index: usize, len: usize },
    #[error("level {level} out of range for factor {index} (dimension {dim})")]
    LevelOutOfRange { index: usize, level: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different Hilbert spaces")]
    SpaceMismatch,
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("cannot normalize a zero vector")]
    ZeroVector,
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("frame reference must be diagonal")]
    NonDiagonalFrame,
    #[error("eigensolver did not converge (off-diagonal norm {off_norm:e})")]
    NoConvergence { off_norm: f64 },
    #[error("bosonic truncation must keep at least one photon (n_max ≥ 1)")]
    InvalidTruncation,
    #[error("space layout: {0}")]
    Layout(&'static str),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("detuning must be non-zero")]
    ZeroDetuning,
    #[error("far-detuning guard violated: |Δ| = {detuning:e} < 10·max|g| = {limit:e}")]
    DetuningGuard { detuning: f64, limit: f64 },
    #[error("mismatch guard violated: |δ| = {delta:e} > |Δ|/10 = {limit:e}")]
    MismatchGuard { delta: f64, limit: f64 },
    #[error("AMES condition 4λ'² ≥ δ² violated (margin 4λ'² − δ² = {margin:e})")]
    AmesCondition { margin: f64 },
    #[error("resource is not maximally entangled (best worst-case fidelity {worst_case_fidelity})")]
    NotMaximallyEntangled { worst_case_fidelity: f64 },
    #[error("at least two samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("no tracked states requested")]
    NoTrackedStates,
    #[error("time grid must satisfy t_end > 0, got {0:e}")]
    InvalidTimeSpan(f64),
}
