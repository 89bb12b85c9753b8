//! Run configuration: one JSON document, optionally overridden by flags.
//!
//! ```json
//! {
//!   "params": {"n_atoms": 400, "g": 1, "omega_c": 5, "kappa": 1, "gamma_e": 1, "gamma_s": 0},
//!   "grid": {"min": -0.5, "max": 0.5, "points": 4001},
//!   "models": ["analytic-dark", "full-linear"],
//!   "output_path": "out/fig2",
//!   "format": "csv"
//! }
//! ```
//!
//! `semiclassical` must be present exactly when the `semiclassical` model is
//! selected. `unit` (default `kappa`) declares the rate unit of every rate and
//! detuning in the document.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use icav::{AtomCavityParams, DetuningGrid, Error, Model, RateUnit, SemiClassicalParams};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: AtomCavityParams,
    pub grid: DetuningGrid,
    pub models: Vec<Model>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiclassical: Option<SemiClassicalParams>,
    pub output_path: PathBuf,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub unit: RateUnit,
}

/// Flag overrides for top-level scalar keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub omega_c: Option<f64>,
    pub n_atoms: Option<u64>,
    pub points: Option<usize>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub models: Option<Vec<Model>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(omega_c) = o.omega_c {
            self.params.omega_c = omega_c;
            if let Some(sc) = self.semiclassical.as_mut() {
                sc.omega_c = omega_c;
            }
        }
        if let Some(n) = o.n_atoms {
            self.params.n_atoms = n;
        }
        if let Some(points) = o.points {
            self.grid.points = points;
        }
        if let Some(min) = o.min {
            self.grid.min = min;
        }
        if let Some(max) = o.max {
            self.grid.max = max;
        }
        if let Some(models) = &o.models {
            self.models = models.clone();
        }
        if let Some(out) = &o.out {
            self.output_path = out.clone();
        }
        if let Some(format) = o.format {
            self.format = format;
        }
    }

    pub fn validate(mut self) -> Result<Self, ConfigError> {
        self.params = self.params.validate().map_err(|e| keyed("params", e))?;
        self.grid = self.grid.validate().map_err(|e| keyed("grid", e))?;
        if self.models.is_empty() {
            return Err(ConfigError::invalid("models", "select at least one model"));
        }
        let mut seen = Vec::new();
        for m in &self.models {
            if seen.contains(m) {
                return Err(ConfigError::invalid("models", format!("model `{m}` listed twice")));
            }
            seen.push(*m);
        }
        let wants_semiclassical = self.models.contains(&Model::Semiclassical);
        match (&self.semiclassical, wants_semiclassical) {
            (None, true) => {
                return Err(ConfigError::invalid(
                    "semiclassical",
                    "required when the semiclassical model is selected",
                ))
            }
            (Some(_), false) => {
                return Err(ConfigError::invalid(
                    "semiclassical",
                    "given but the semiclassical model is not selected",
                ))
            }
            (Some(sc), true) => {
                self.semiclassical = Some(sc.validate().map_err(|e| keyed("semiclassical", e))?);
            }
            (None, false) => {}
        }
        if self.output_path.as_os_str().is_empty() {
            return Err(ConfigError::invalid("output_path", "must not be empty"));
        }
        Ok(self)
    }
}

fn keyed(section: &str, e: Error) -> ConfigError {
    let field = match &e {
        Error::NonFinite { name, .. } | Error::NegativeRate { name, .. } => Some(*name),
        Error::InvalidSemiclassical { name, .. } => Some(*name),
        Error::NonPositiveKappa(_) => Some("kappa"),
        Error::GridPoints(_) => Some("points"),
        Error::GridOrder { .. } => Some("min"),
        _ => None,
    };
    let key = match field {
        Some(f) => format!("{section}.{f}"),
        None => section.to_string(),
    };
    ConfigError::invalid(key, e)
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, &Overrides::default())
}

/// Parses a document, applies flag overrides, then validates.
pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let mut config: RunConfig = serde_json::from_str(text)?;
    config.apply(overrides);
    config.validate()
}
