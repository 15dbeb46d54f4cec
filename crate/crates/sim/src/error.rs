use std::path::PathBuf;

use thiserror::Error;

/// Failures of a scenario run. Every variant maps to exit code 1 except
/// validation failures, which are reported through the summary instead.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid config field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("could not parse config: {0}")]
    Parse(#[source] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] cqed_core::Error),
}

impl SimError {
    pub fn invalid(field: &'static str, reason: impl ToString) -> Self {
        SimError::Invalid { field, reason: reason.to_string() }
    }
}
