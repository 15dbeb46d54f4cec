//! The JSON summary every scenario writes.

use cqed_core::hamiltonian::SystemParams;
use cqed_core::C64;
use serde::Serialize;

use crate::tolerances::{agrees_to_figures, relative_deviation, Quoted, Tolerances};

/// Whether a failed check fails the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Part of the verdict: a failure gives exit code 2.
    Validation,
    /// Reported for comparison only.
    Informational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn at_least(name: &str, value: f64, bound: f64) -> Self {
        Check::new(name, value, Relation::AtLeast, bound)
    }

    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Check::new(name, value, Relation::AtMost, bound)
    }

    fn new(name: &str, value: f64, relation: Relation, bound: f64) -> Self {
        let passed = match relation {
            Relation::AtLeast => value >= bound,
            Relation::AtMost => value <= bound,
        };
        Check { name: name.to_string(), kind: CheckKind::Validation, value, relation, bound, passed, note: None }
    }

    pub fn informational(mut self) -> Self {
        self.kind = CheckKind::Informational;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Relative deviation of a computed timescale from a quoted one.
    pub fn against_quoted(name: &str, value: f64, quoted: Quoted, tolerances: &Tolerances) -> Self {
        let figures = agrees_to_figures(value, quoted.value, quoted.figures);
        Check::at_most(name, relative_deviation(value, quoted.value), tolerances.timing_relative)
            .informational()
            .with_note(format!(
                "computed {value:e} s vs quoted {:e} s; {} at the quoted {} significant figure(s)",
                quoted.value,
                if figures { "agrees" } else { "disagrees" },
                quoted.figures
            ))
    }
}

/// Resolved model parameters, all angular frequencies in rad/s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsSummary {
    pub omega_op: f64,
    pub omega_at: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub detuning: f64,
    pub delta: f64,
    pub lambda: f64,
    pub lambda_prime: f64,
    pub rabi_frequency: f64,
    pub n_max: usize,
}

impl From<&SystemParams> for ParamsSummary {
    fn from(p: &SystemParams) -> Self {
        ParamsSummary {
            omega_op: p.omega_op(),
            omega_at: p.omega_at(),
            g_a: p.g_a(),
            g_b: p.g_b(),
            detuning: p.detuning(),
            delta: p.delta(),
            lambda: p.lambda(),
            lambda_prime: p.lambda_prime(),
            rabi_frequency: p.rabi_frequency(),
            n_max: p.n_max(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Units {
    pub frequency: &'static str,
    pub time: &'static str,
}

pub const UNITS: Units = Units { frequency: "rad/s", time: "s" };

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: &'static str,
    pub units: Units,
    pub params: ParamsSummary,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// True when every validation check passed.
    pub passed: bool,
    pub checks: Vec<Check>,
    pub results: serde_json::Value,
    pub artifacts: Vec<String>,
}

/// `[re, im]` pairs for JSON.
pub fn complex_pairs(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}
