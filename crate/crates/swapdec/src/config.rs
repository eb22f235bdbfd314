//! Experiment configuration: strict JSON ingestion.
//!
//! Unknown fields are rejected at every level. Top-level syntax and schema
//! errors carry serde_json's line/column information; parameter-block errors
//! are prefixed with the offending block. The effective seed and unit system
//! are pushed down into the parameter block before a run, so the config echo
//! in `summary.json` always reparses to the exact configuration that ran.

use serde::{Deserialize, Serialize};

use crate::dynamics::{BlochAngles, RunConfig, SwapLabel, SwapMode, ZenoConfig};
use crate::error::{Error, Result};
use crate::observer::{ObservableCatalog, ReferenceSpec, Units};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    SwapTrace,
    Decay,
    Zeno,
    Lg,
    SieveCheck,
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ExperimentKind::SwapTrace => "swap-trace",
            ExperimentKind::Decay => "decay",
            ExperimentKind::Zeno => "zeno",
            ExperimentKind::Lg => "lg",
            ExperimentKind::SieveCheck => "sieve-check",
        };
        write!(f, "{name}")
    }
}

/// Parameters of a swap-trace run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SwapTraceParams {
    pub sequence: Vec<SwapLabel>,
    #[serde(default)]
    pub mode: SwapMode,
    #[serde(default)]
    pub reference_bloch: BlochAngles,
    #[serde(default)]
    pub pointer_bloch: BlochAngles,
}

/// Parameters of a Leggett-Garg run over a grid of theta = omega * tau.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct LgParams {
    /// Rotation angle per tick; used with `tau` when no grid is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    /// Ticks between measurements.
    #[serde(default = "default_tau")]
    pub tau: u64,
    /// Grid of theta values; overrides `omega`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_grid: Option<Vec<f64>>,
    pub trials_per_pair: u64,
    /// Also run the measured-every-interval control model.
    #[serde(default)]
    pub include_control: bool,
    #[serde(default)]
    pub seed: u64,
}

fn default_tau() -> u64 {
    1
}

impl LgParams {
    /// The effective theta grid.
    pub fn thetas(&self) -> Result<Vec<f64>> {
        let grid = match (&self.theta_grid, self.omega) {
            (Some(grid), _) if !grid.is_empty() => grid.clone(),
            (Some(_), _) => {
                return Err(Error::validation("theta-grid must not be empty"))
            }
            (None, Some(omega)) => vec![omega * self.tau as f64],
            (None, None) => {
                return Err(Error::validation(
                    "lg parameters need either theta-grid or omega",
                ))
            }
        };
        if grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::validation("theta values must be finite"));
        }
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials_per_pair < 1 {
            return Err(Error::validation("trials-per-pair must be ≥ 1"));
        }
        if self.tau < 1 {
            return Err(Error::validation("tau must be ≥ 1"));
        }
        self.thetas().map(|_| ())
    }
}

/// Parameters of a predictability-sieve check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SieveCheckParams {
    pub catalog: ObservableCatalog,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_spec: Option<ReferenceSpec>,
}

impl SieveCheckParams {
    pub fn validate(&self) -> Result<()> {
        if let Some(spec) = &self.reference_spec {
            spec.validate_against(&self.catalog)?;
        }
        Ok(())
    }
}

/// Experiment-specific parameter block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExperimentParams {
    SwapTrace(SwapTraceParams),
    Decay(RunConfig),
    Zeno(ZenoConfig),
    Lg(LgParams),
    SieveCheck(SieveCheckParams),
}

/// Output path configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
}

/// A fully parsed experiment configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "ConfigDoc",
    into = "ConfigDoc"
)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub params: ExperimentParams,
    pub seed: Option<u64>,
    pub units: Units,
    pub output: Option<OutputConfig>,
}

/// On-disk document shape.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigDoc {
    experiment: ExperimentKind,
    parameters: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default)]
    units: Units,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<OutputConfig>,
}

impl TryFrom<ConfigDoc> for ExperimentConfig {
    type Error = Error;

    fn try_from(doc: ConfigDoc) -> Result<Self> {
        fn block<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
            serde_json::from_value(value)
                .map_err(|e| Error::Config(format!("in parameters: {e}")))
        }
        let params = match doc.experiment {
            ExperimentKind::SwapTrace => ExperimentParams::SwapTrace(block(doc.parameters)?),
            ExperimentKind::Decay => ExperimentParams::Decay(block(doc.parameters)?),
            ExperimentKind::Zeno => ExperimentParams::Zeno(block(doc.parameters)?),
            ExperimentKind::Lg => ExperimentParams::Lg(block(doc.parameters)?),
            ExperimentKind::SieveCheck => ExperimentParams::SieveCheck(block(doc.parameters)?),
        };
        Ok(ExperimentConfig {
            experiment: doc.experiment,
            params,
            seed: doc.seed,
            units: doc.units,
            output: doc.output,
        })
    }
}

impl From<ExperimentConfig> for ConfigDoc {
    fn from(config: ExperimentConfig) -> Self {
        let parameters = match &config.params {
            ExperimentParams::SwapTrace(p) => serde_json::to_value(p),
            ExperimentParams::Decay(p) => serde_json::to_value(p),
            ExperimentParams::Zeno(p) => serde_json::to_value(p),
            ExperimentParams::Lg(p) => serde_json::to_value(p),
            ExperimentParams::SieveCheck(p) => serde_json::to_value(p),
        }
        .expect("parameter blocks serialize to JSON objects");
        ConfigDoc {
            experiment: config.experiment,
            parameters,
            seed: config.seed,
            units: config.units,
            output: config.output,
        }
    }
}

impl ExperimentConfig {
    /// Parses a configuration document. Never panics on malformed input.
    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self> {
        let doc: ConfigDoc = serde_json::from_slice(bytes)
            .map_err(|e| Error::Config(e.to_string()))?;
        doc.try_into()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json_bytes(s.as_bytes())
    }

    pub fn to_json(&self) -> Result<String> {
        crate::report::to_json_17(self)
    }

    /// Structural validation beyond parsing.
    pub fn validate(&self) -> Result<()> {
        match &self.params {
            ExperimentParams::SwapTrace(p) => {
                if p.sequence.is_empty() {
                    return Err(Error::validation("sequence must not be empty"));
                }
                Ok(())
            }
            ExperimentParams::Decay(p) => p.validate(),
            ExperimentParams::Zeno(p) => p.validate(),
            ExperimentParams::Lg(p) => p.validate(),
            ExperimentParams::SieveCheck(p) => p.validate(),
        }
    }

    /// Pushes the effective seed and unit system into the parameter block.
    /// `flag_seed` (from the command line) wins over the config seed; a
    /// missing seed defaults to 0 and is reported for a stderr warning.
    pub fn resolve(&mut self, flag_seed: Option<u64>, flag_units: Option<Units>) -> SeedSource {
        let (seed, source) = match (flag_seed, self.seed) {
            (Some(s), _) => (s, SeedSource::Flag),
            (None, Some(s)) => (s, SeedSource::Config),
            (None, None) => (0, SeedSource::Defaulted),
        };
        self.seed = Some(seed);
        if let Some(units) = flag_units {
            self.units = units;
        }
        let units = self.units;
        match &mut self.params {
            ExperimentParams::Decay(p) => {
                p.seed = seed;
                p.ledger.units = units;
            }
            ExperimentParams::Zeno(p) => {
                p.seed = seed;
                p.ledger.units = units;
            }
            ExperimentParams::Lg(p) => p.seed = seed,
            ExperimentParams::SwapTrace(_) | ExperimentParams::SieveCheck(_) => {}
        }
        source
    }
}

/// Where the effective seed came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedSource {
    Flag,
    Config,
    Defaulted,
}
