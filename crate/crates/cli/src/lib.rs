//! Command-line front end for `icav`: configuration, orchestration and
//! serialization of spectra and lineshape reports.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{parse_config, parse_config_with, Format, Overrides, RunConfig};
pub use error::{CliError, ConfigError};
pub use output::{emit_spectrum, parse_spectrum_json, spectrum_csv, spectrum_json};
pub use run::{compare, linewidths, rabi_scan, run};
