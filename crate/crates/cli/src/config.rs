//! Run configuration (TOML).
//!
//! ```toml
//! [hazard]
//! kind = "composite_bathtub"   # constant | weibull | composite_bathtub | tabulated
//!
//! [array]
//! codes = [[25, 15], [12, 10]] # (n, k) per dimension, dimension 1 first
//!
//! [grid]
//! start = 0.01
//! end = 2000.0
//! points = 200
//! spacing = "log"              # linear | log
//!
//! [simulation]
//! trials = 100000
//! seed = 1
//!
//! [output]
//! path = "curve.csv"
//! quantity = "component_hazard"
//! log_log = true
//! ```
//!
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use mdsrel::{
    ArrayConfig, CompositeBathtub, ConstantHazard, Grid, Hazard, MdsCode, Spacing, TabulatedHazard, Weibull,
    WeibullPiece,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub hazard: HazardSection,
    pub array: ArraySection,
    pub grid: GridSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mttf: Option<MttfSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptotic: Option<AsymptoticSection>,
    #[serde(default, skip_serializing_if = "OutputSection::is_empty")]
    pub output: OutputSection,
}

/// Component hazard model. Omitted bathtub fields take the default
/// shapes (0.5, 1, 2.5), scales (100, 200, 500) h and breakpoints (100, 1000) h.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HazardSection {
    Constant {
        rate: f64,
    },
    Weibull {
        shape: f64,
        scale: f64,
    },
    CompositeBathtub {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shapes: Option<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scales: Option<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        breakpoints: Option<[f64; 2]>,
    },
    Tabulated {
        times: Vec<f64>,
        rates: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySection {
    pub codes: Vec<[u64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SpacingName {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: SpacingName,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MttfSection {
    pub truncation_eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct AsymptoticSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// Block length for the finite-n column; defaults to `n` of dimension 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rates: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    ComponentHazard,
    ArrayHazard,
    Survival,
    Density,
    LowerBound,
    BaseHazard,
}

impl Quantity {
    pub fn column(self) -> &'static str {
        match self {
            Quantity::ComponentHazard => "component_hazard",
            Quantity::ArrayHazard => "array_hazard",
            Quantity::Survival => "survival",
            Quantity::Density => "density",
            Quantity::LowerBound => "lower_bound",
            Quantity::BaseHazard => "base_hazard",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_log: Option<bool>,
}

impl OutputSection {
    fn is_empty(&self) -> bool {
        self == &OutputSection::default()
    }
}

/// Everything a command needs, checked.
#[derive(Debug, Clone)]
pub struct Validated {
    pub model: Hazard,
    pub array: ArrayConfig,
    pub grid: Grid,
}

fn invalid(key: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{key}: {detail}"))
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configuration always serializes")
    }

    pub fn validate(&self) -> Result<Validated, CliError> {
        Ok(Validated {
            model: self.hazard.build()?,
            array: self.array.build()?,
            grid: self.grid.build()?,
        })
    }
}

impl HazardSection {
    pub fn build(&self) -> Result<Hazard, CliError> {
        Ok(match self {
            HazardSection::Constant { rate } => {
                ConstantHazard::new(*rate).map_err(|e| invalid("hazard.rate", e))?.into()
            }
            HazardSection::Weibull { shape, scale } => Weibull::new(*shape, *scale)
                .map_err(|e| invalid("hazard.shape/hazard.scale", e))?
                .into(),
            HazardSection::CompositeBathtub {
                shapes,
                scales,
                breakpoints,
            } => {
                let default = CompositeBathtub::paper_default();
                let d = default.pieces();
                let shapes = shapes.unwrap_or([d[0].shape, d[1].shape, d[2].shape]);
                let scales = scales.unwrap_or([d[0].scale, d[1].scale, d[2].scale]);
                let [t1, t2] = breakpoints.unwrap_or({
                    let (a, b) = default.breakpoints();
                    [a, b]
                });
                let pieces = [0, 1, 2].map(|i| WeibullPiece::new(shapes[i], scales[i]));
                CompositeBathtub::new(pieces, t1, t2)
                    .map_err(|e| invalid("hazard.shapes/hazard.scales/hazard.breakpoints", e))?
                    .into()
            }
            HazardSection::Tabulated { times, rates } => TabulatedHazard::new(times.clone(), rates.clone())
                .map_err(|e| invalid("hazard.times/hazard.rates", e))?
                .into(),
        })
    }
}

impl ArraySection {
    pub fn build(&self) -> Result<ArrayConfig, CliError> {
        if self.codes.is_empty() {
            return Err(invalid("array.codes", "need at least one (n, k) pair"));
        }
        let dims = self
            .codes
            .iter()
            .enumerate()
            .map(|(i, [n, k])| MdsCode::new(*n, *k).map_err(|e| invalid(&format!("array.codes[{i}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        ArrayConfig::new(dims).map_err(|e| invalid("array.codes", e))
    }
}

impl GridSection {
    pub fn build(&self) -> Result<Grid, CliError> {
        if self.points < 2 {
            return Err(invalid("grid.points", format!("need at least 2, got {}", self.points)));
        }
        if !(self.start >= 0.0) {
            return Err(invalid("grid.start", format!("must be >= 0, got {}", self.start)));
        }
        if !(self.end > self.start) || !self.end.is_finite() {
            return Err(invalid("grid.end", format!("must be finite and exceed grid.start, got {}", self.end)));
        }
        let spacing = match self.spacing {
            SpacingName::Linear => Spacing::Linear,
            SpacingName::Log => {
                if !(self.start > 0.0) {
                    return Err(invalid("grid.start", "log spacing needs start > 0"));
                }
                Spacing::Log
            }
        };
        Grid::uniform(self.start, self.end, self.points, spacing).map_err(|e| invalid("grid", e))
    }
}
