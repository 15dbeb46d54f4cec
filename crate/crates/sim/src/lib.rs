//! Scenario runner for the `cqed-core` simulator.
//!
//! A scenario is selected by subcommand and parameterized by a JSON config
//! (see [`config::ScenarioConfig`]). Each run writes time-series CSVs, a JSON
//! summary with scalar results and checks, and, for `validate-effective`, the
//! full-vs-effective deviation table and the typo ledger.
//!
//! Exit codes: 0 when every validation check passes, 2 when one fails, 1 on
//! configuration or I/O errors.

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;
pub mod summary;
pub mod tolerances;

pub use config::{Scenario, ScenarioConfig};
pub use error::SimError;
pub use scenarios::{run, RunReport};
