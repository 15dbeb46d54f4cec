//! Scenario configuration files.
//!
//! A config is a JSON object; every section is optional and defaults to the
//! reference operating point (g = 2π×15.2 GHz, Δ = 100g, ω_op = 2π×192 THz,
//! δ = 2π×304 MHz and λ' = 2π×152 MHz for the mismatched AMES). Frequencies
//! are cycles per second unless `angular` is set, in which case they are
//! taken as rad/s.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use cqed_core::hamiltonian::SystemParams;
use cqed_core::protocols::{AmesMode, QubitPairState, TransferVariant};
use cqed_core::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::tolerances::Tolerances;

pub const DEFAULT_OMEGA_OP_HZ: f64 = 192e12;
pub const DEFAULT_G_HZ: f64 = 15.2e9;
pub const DEFAULT_DETUNING_OVER_G: f64 = 100.0;
pub const DEFAULT_DELTA_HZ: f64 = 304e6;
pub const DEFAULT_LAMBDA_PRIME_HZ: f64 = 152e6;
pub const DEFAULT_N_MAX: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Transfer,
    Ames,
    Scan,
    Teleport,
    ValidateEffective,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Transfer => "transfer",
            Scenario::Ames => "ames",
            Scenario::Scan => "scan",
            Scenario::Teleport => "teleport",
            Scenario::ValidateEffective => "validate-effective",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Must match the subcommand when present.
    pub scenario: Option<Scenario>,
    /// Frequencies are given in rad/s rather than Hz.
    pub angular: bool,
    pub params: ParamsConfig,
    pub grid: GridConfig,
    pub transfer: TransferConfig,
    pub ames: AmesConfig,
    pub teleport: TeleportConfig,
    pub lifetime: LifetimeConfig,
    pub io: IoConfig,
    pub seed: u64,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub omega_op: Option<f64>,
    pub g: Option<f64>,
    /// Absolute detuning Δ = ω_op − ω_at; excludes `detuning_over_g`.
    pub detuning: Option<f64>,
    /// Detuning in units of `g`.
    pub detuning_over_g: Option<f64>,
    /// Two-mode frequency mismatch δ.
    pub delta: Option<f64>,
    /// Effective mismatched coupling λ'; when set, `g` is derived from it.
    pub lambda_prime: Option<f64>,
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub n_samples: usize,
    /// End of the time grid in seconds; defaults to the protocol duration.
    pub t_end: Option<f64>,
    /// Scan range `[−epsilon_max, epsilon_max]` of relative errors.
    pub epsilon_max: f64,
    pub n_points: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { n_samples: 201, t_end: None, epsilon_max: 0.1, n_points: 41 }
    }
}

/// An input two-qubit state: `"uniform"`, `"random"` (drawn from the seed)
/// or explicit `[[re, im]; 4]` amplitudes in the order gg, ge, eg, ee.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputState {
    Named(NamedInput),
    Amplitudes([[f64; 2]; 4]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedInput {
    Uniform,
    Random,
}

impl InputState {
    pub fn resolve(&self, field: &'static str, seed: u64) -> Result<QubitPairState, SimError> {
        match self {
            InputState::Named(NamedInput::Uniform) => {
                Ok(QubitPairState::new([C64::new(0.5, 0.0); 4]).expect("normalized"))
            }
            InputState::Named(NamedInput::Random) => Ok(QubitPairState::random(&mut ChaCha8Rng::seed_from_u64(seed))),
            InputState::Amplitudes(a) => {
                QubitPairState::new(a.map(|[re, im]| C64::new(re, im))).map_err(|e| SimError::invalid(field, e))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantName {
    Vacuum,
    SinglePhoton,
    VacuumWithPrecorrection,
}

impl From<VariantName> for TransferVariant {
    fn from(v: VariantName) -> Self {
        match v {
            VariantName::Vacuum => TransferVariant::Vacuum,
            VariantName::SinglePhoton => TransferVariant::SinglePhoton,
            VariantName::VacuumWithPrecorrection => TransferVariant::VacuumWithPrecorrection,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransferConfig {
    /// Variants to run; all of them when absent.
    pub variants: Option<Vec<VariantName>>,
    pub input: InputState,
}

impl Default for TransferConfig {
    fn default() -> Self {
        TransferConfig { variants: None, input: InputState::Named(NamedInput::Uniform) }
    }
}

impl TransferConfig {
    pub fn variants(&self) -> Vec<TransferVariant> {
        match &self.variants {
            Some(v) => v.iter().map(|&x| x.into()).collect(),
            None => TransferVariant::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Resonant,
    Mismatch,
}

impl From<ModeName> for AmesMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Resonant => AmesMode::Resonant,
            ModeName::Mismatch => AmesMode::Mismatch,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AmesConfig {
    pub mode: ModeName,
}

impl Default for AmesConfig {
    fn default() -> Self {
        AmesConfig { mode: ModeName::Mismatch }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResourceName {
    /// The ideal `½(|gg1⟩ + |ge2⟩ + |eg3⟩ + |ee4⟩)`.
    Ideal,
    /// The AMES prepared by the resonant protocol.
    AmesResonant,
    /// The AMES prepared by the mismatched protocol.
    AmesMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TeleportConfig {
    pub resource: ResourceName,
    pub input: InputState,
    /// Number of sampled runs (each with its own measurement seed).
    pub shots: usize,
}

impl Default for TeleportConfig {
    fn default() -> Self {
        TeleportConfig { resource: ResourceName::AmesMismatch, input: InputState::Named(NamedInput::Random), shots: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LifetimeConfig {
    pub quality_factor: f64,
    /// Cavity excitation probability entering `τ = Q/(p·ω_op)`.
    pub excitation: f64,
}

impl Default for LifetimeConfig {
    fn default() -> Self {
        LifetimeConfig { quality_factor: 3.9e4, excitation: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IoConfig {
    pub out_dir: PathBuf,
}

impl Default for IoConfig {
    fn default() -> Self {
        IoConfig { out_dir: PathBuf::from("out") }
    }
}

impl ScenarioConfig {
    pub fn from_path(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path).map_err(|e| SimError::Io { path: path.to_path_buf(), source: e })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(SimError::Parse)
    }

    /// Conversion factor from config units to rad/s.
    pub fn angular_factor(&self) -> f64 {
        if self.angular {
            1.0
        } else {
            2.0 * PI
        }
    }

    /// Checks the invariants that do not depend on the scenario physics.
    pub fn validate(&self, scenario: Scenario) -> Result<(), SimError> {
        if let Some(s) = self.scenario {
            if s != scenario {
                return Err(SimError::invalid(
                    "scenario",
                    format!("config is for {}, not {}", s.name(), scenario.name()),
                ));
            }
        }
        if self.grid.n_samples < 2 {
            return Err(SimError::invalid("grid.n_samples", "must be at least 2"));
        }
        if let Some(t) = self.grid.t_end {
            if !(t.is_finite() && t > 0.0) {
                return Err(SimError::invalid("grid.t_end", "must be a positive time in seconds"));
            }
        }
        if !(self.grid.epsilon_max > 0.0 && self.grid.epsilon_max < 1.0) {
            return Err(SimError::invalid("grid.epsilon_max", "must lie in (0, 1)"));
        }
        if self.grid.n_points < 3 {
            return Err(SimError::invalid("grid.n_points", "must be at least 3"));
        }
        if self.teleport.shots == 0 {
            return Err(SimError::invalid("teleport.shots", "must be at least 1"));
        }
        positive("lifetime.quality_factor", self.lifetime.quality_factor)?;
        positive("lifetime.excitation", self.lifetime.excitation)?;
        let p = &self.params;
        for (field, value) in [("params.omega_op", p.omega_op), ("params.lambda_prime", p.lambda_prime)] {
            if let Some(v) = value {
                positive(field, v)?;
            }
        }
        for (field, value) in [("params.detuning", p.detuning), ("params.detuning_over_g", p.detuning_over_g)] {
            if let Some(v) = value {
                if !(v.is_finite() && v != 0.0) {
                    return Err(SimError::invalid(field, "must be finite and non-zero"));
                }
            }
        }
        if let Some(g) = p.g {
            if !(g.is_finite() && g >= 0.0) {
                return Err(SimError::invalid("params.g", "must be finite and non-negative"));
            }
        }
        if let Some(d) = p.delta {
            if !d.is_finite() {
                return Err(SimError::invalid("params.delta", "must be finite"));
            }
        }
        if p.detuning.is_some() && p.detuning_over_g.is_some() {
            return Err(SimError::invalid("params.detuning", "give either detuning or detuning_over_g, not both"));
        }
        if p.g.is_some() && p.lambda_prime.is_some() {
            return Err(SimError::invalid("params.lambda_prime", "give either g or lambda_prime, not both"));
        }
        Ok(())
    }

    /// Whether the scenario runs the mismatched model.
    pub fn uses_mismatch(&self, scenario: Scenario) -> bool {
        match scenario {
            Scenario::Ames => self.ames.mode == ModeName::Mismatch,
            Scenario::Scan => true,
            Scenario::Teleport => self.teleport.resource == ResourceName::AmesMismatch,
            Scenario::Transfer | Scenario::ValidateEffective => false,
        }
    }

    /// Model parameters in rad/s.
    ///
    /// Mismatched scenarios default to δ = 2π×304 MHz and λ' = 2π×152 MHz;
    /// everything else defaults to the resonant model δ = 0.
    pub fn system_params(&self, scenario: Scenario) -> Result<SystemParams, SimError> {
        self.system_params_for(self.uses_mismatch(scenario))
    }

    /// Model parameters for the resonant (`mismatch = false`) or the
    /// mismatched model.
    pub fn system_params_for(&self, mismatch: bool) -> Result<SystemParams, SimError> {
        let k = self.angular_factor();
        let p = &self.params;
        let omega_op = p.omega_op.map_or(2.0 * PI * DEFAULT_OMEGA_OP_HZ, |v| v * k);
        let g_ref = p.g.map_or(2.0 * PI * DEFAULT_G_HZ, |v| v * k);
        let detuning = match (p.detuning, p.detuning_over_g) {
            (Some(d), _) => d * k,
            (None, Some(r)) => r * g_ref,
            (None, None) => DEFAULT_DETUNING_OVER_G * g_ref,
        };
        let delta = match p.delta {
            Some(d) => d * k,
            None if mismatch => 2.0 * PI * DEFAULT_DELTA_HZ,
            None => 0.0,
        };
        let n_max = p.n_max.unwrap_or(DEFAULT_N_MAX);
        let omega_at = omega_op - detuning;
        let lambda_prime = match p.lambda_prime {
            Some(l) => Some(l * k),
            None if mismatch && p.g.is_none() => Some(2.0 * PI * DEFAULT_LAMBDA_PRIME_HZ),
            None => None,
        };
        let params = match lambda_prime {
            Some(l) => SystemParams::from_lambda_prime(omega_op, omega_at, l, delta, n_max),
            None => SystemParams::new(omega_op, omega_at, g_ref, delta, n_max),
        };
        params.map_err(|e| SimError::invalid("params", e))
    }

    pub fn cavity_lifetime(&self, params: &SystemParams) -> f64 {
        self.lifetime.quality_factor / (self.lifetime.excitation * params.omega_op())
    }
}

fn positive(field: &'static str, v: f64) -> Result<(), SimError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(SimError::invalid(field, "must be finite and positive"))
    }
}
