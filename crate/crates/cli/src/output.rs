//! Spectrum and report serialization.
//!
//! Numbers are written in Rust's shortest round-trip decimal form, so a
//! parsed value is bit-identical to the one written.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use icav::{LineshapeReport, Model, ParamsSnapshot, RateUnit, RegimeReport, Spectrum};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::CliError;

pub const CSV_HEADER: &str = "delta,transmission,model";

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::with_capacity(48 * (s.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (d, t) in s.points() {
        let _ = writeln!(out, "{d},{t},{}", s.model);
    }
    out
}

pub fn spectrum_json(s: &Spectrum) -> String {
    let mut text = serde_json::to_string_pretty(s).expect("spectrum serializes");
    text.push('\n');
    text
}

pub fn parse_spectrum_json(text: &str) -> Result<Spectrum, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn render_spectrum(s: &Spectrum, format: Format) -> String {
    match format {
        Format::Csv => spectrum_csv(s),
        Format::Json => spectrum_json(s),
    }
}

/// Writes one spectrum file.
pub fn emit_spectrum(s: &Spectrum, format: Format, path: &Path) -> Result<(), CliError> {
    fs::write(path, render_spectrum(s, format)).map_err(|e| CliError::io(path, e))
}

/// Per-model report written next to each spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub model: Model,
    pub unit: RateUnit,
    pub params_snapshot: ParamsSnapshot,
    pub lineshape: LineshapeReport,
    /// 2κ·cos²θ for the same parameters.
    pub analytic_linewidth: f64,
    pub empty_cavity_linewidth: f64,
    pub regime: RegimeReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FwhmEntry {
    pub model: Model,
    pub fwhm: f64,
}

/// Relative FWHM difference |b − a|/a of a model pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDifference {
    pub reference: Model,
    pub other: Model,
    pub relative_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareSummary {
    pub unit: RateUnit,
    pub params_snapshot: ParamsSnapshot,
    pub fwhm: Vec<FwhmEntry>,
    pub pairs: Vec<PairDifference>,
}

impl CompareSummary {
    pub fn new(unit: RateUnit, params_snapshot: ParamsSnapshot, fwhm: Vec<FwhmEntry>) -> Self {
        let mut pairs = Vec::new();
        for (i, a) in fwhm.iter().enumerate() {
            for b in &fwhm[i + 1..] {
                pairs.push(PairDifference {
                    reference: a.model,
                    other: b.model,
                    relative_difference: (b.fwhm - a.fwhm).abs() / a.fwhm,
                });
            }
        }
        Self {
            unit,
            params_snapshot,
            fwhm,
            pairs,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

/// Writes all files into `dir` or none of them.
///
/// Files already written are removed when a later write fails, and so is the
/// directory if this call created it.
pub fn write_all(dir: &Path, files: &[(String, String)]) -> Result<Vec<PathBuf>, CliError> {
    let existed = dir.is_dir();
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = dir.join(name);
        if let Err(e) = fs::write(&path, contents) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            if !existed {
                let _ = fs::remove_dir(dir);
            }
            return Err(CliError::io(path, e));
        }
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use icav::{sweep, AtomCavityParams, DetuningGrid};

    fn five_point() -> Spectrum {
        let p = AtomCavityParams::new(0, 1.0, 1.0, 1.0, 1.0);
        sweep(&p, &DetuningGrid::new(-2.0, 2.0, 5).unwrap(), Model::AnalyticDark).unwrap()
    }

    #[test]
    fn csv_layout() {
        let csv = spectrum_csv(&five_point());
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines.len(), 7); // trailing newline
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "-2,0.2,analytic-dark");
        assert_eq!(lines[3], "0,1,analytic-dark");
        assert_eq!(lines[6], "");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn csv_full_precision() {
        let p = AtomCavityParams::new(400, 1.0, 5.0, 1.0, 1.0);
        let s = sweep(&p, &DetuningGrid::new(-0.3, 0.3, 7).unwrap(), Model::FullLinear).unwrap();
        let csv = spectrum_csv(&s);
        for (line, (d, t)) in csv.lines().skip(1).zip(s.points()) {
            let mut cols = line.split(',');
            assert_eq!(cols.next().unwrap().parse::<f64>().unwrap().to_bits(), d.to_bits());
            assert_eq!(cols.next().unwrap().parse::<f64>().unwrap().to_bits(), t.to_bits());
        }
    }

    #[test]
    fn json_fields() {
        let v: serde_json::Value = serde_json::from_str(&spectrum_json(&five_point())).unwrap();
        for key in ["detunings", "transmission", "model", "params_snapshot"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["model"], "analytic-dark");
    }

    #[test]
    fn pairwise_differences() {
        let snap = ParamsSnapshot::from(AtomCavityParams::new(0, 1.0, 1.0, 1.0, 1.0));
        let s = CompareSummary::new(
            RateUnit::Kappa,
            snap,
            vec![
                FwhmEntry { model: Model::AnalyticDark, fwhm: 2.0 },
                FwhmEntry { model: Model::FullLinear, fwhm: 2.1 },
                FwhmEntry { model: Model::Semiclassical, fwhm: 1.9 },
            ],
        );
        assert_eq!(s.pairs.len(), 3);
        assert!((s.pairs[0].relative_difference - 0.05).abs() < 1e-12);
        assert_eq!(s.pairs[2].reference, Model::FullLinear);
    }
}
