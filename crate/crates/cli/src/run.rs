//! Orchestration behind the subcommands.

use std::path::PathBuf;

use icav::lineshape::{analyze, find_peaks, fwhm_of_central_peak, Peak};
use icav::{
    analytic_linewidth, coupling_regime, make_basis, semiclassical, sweep, AtomCavityParams, CavityGeometry,
    DetuningGrid, Model, ParamsSnapshot, SemiClassicalParams, Spectrum,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{render_spectrum, to_json, write_all, CompareSummary, FwhmEntry, ModelReport};

/// Spectrum of one model for a validated configuration.
pub fn model_spectrum(config: &RunConfig, model: Model) -> Result<Spectrum, CliError> {
    let result = match model {
        Model::Semiclassical => {
            let sc = config.semiclassical.as_ref().ok_or_else(|| {
                CliError::compute(model, icav::Error::MissingSemiclassical(model.as_str()))
            })?;
            semiclassical::sweep(&config.params, sc, &config.grid)
        }
        quantum => sweep(&config.params, &config.grid, quantum),
    };
    result.map_err(|e| CliError::compute(model, e))
}

pub fn model_report(config: &RunConfig, spectrum: &Spectrum) -> Result<ModelReport, CliError> {
    let model = spectrum.model;
    let err = |e| CliError::compute(model, e);
    Ok(ModelReport {
        model,
        unit: config.unit,
        params_snapshot: spectrum.params_snapshot,
        lineshape: analyze(spectrum).map_err(err)?,
        analytic_linewidth: analytic_linewidth(&config.params).map_err(err)?,
        empty_cavity_linewidth: config.params.empty_cavity_linewidth(),
        regime: coupling_regime(&config.params).map_err(err)?,
    })
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: CompareSummary,
    pub files: Vec<PathBuf>,
}

/// Computes every selected model, then writes spectra, reports and the
/// comparison summary. Nothing is written if any computation fails.
pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let mut models = config.models.clone();
    models.sort();
    let mut files = Vec::new();
    let mut fwhm = Vec::new();
    for &model in &models {
        let spectrum = model_spectrum(config, model)?;
        let report = model_report(config, &spectrum)?;
        fwhm.push(FwhmEntry {
            model,
            fwhm: report.lineshape.fwhm,
        });
        files.push((
            format!("spectrum-{model}.{}", config.format.extension()),
            render_spectrum(&spectrum, config.format),
        ));
        files.push((format!("report-{model}.json"), to_json(&report)));
    }
    let snapshot = ParamsSnapshot {
        atom_cavity: config.params,
        semiclassical: config.semiclassical,
    };
    let summary = CompareSummary::new(config.unit, snapshot, fwhm);
    files.push(("summary.json".to_string(), to_json(&summary)));
    let written = write_all(&config.output_path, &files)?;
    Ok(RunOutput {
        summary,
        files: written,
    })
}

/// FWHM per selected model, without writing files.
pub fn linewidths(config: &RunConfig) -> Result<Vec<FwhmEntry>, CliError> {
    let mut models = config.models.clone();
    models.sort();
    models
        .into_iter()
        .map(|model| {
            let s = model_spectrum(config, model)?;
            let fwhm = fwhm_of_central_peak(&s).map_err(|e| CliError::compute(model, e))?;
            Ok(FwhmEntry { model, fwhm })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct RabiScan {
    pub spectrum: Spectrum,
    pub peaks: Vec<Peak<f64>>,
    /// √(Ng²+Ω²)
    pub expected_splitting: f64,
}

/// Full-linear spectrum on a grid spanning `span_factor`·√(Ng²+Ω²) each side.
pub fn rabi_scan(params: &AtomCavityParams, points: usize, span_factor: f64) -> Result<RabiScan, CliError> {
    let model = Model::FullLinear;
    let err = |e| CliError::compute(model, e);
    let rabi = make_basis(params).map_err(err)?.collective_rabi;
    let grid = DetuningGrid::symmetric(span_factor * rabi, points).map_err(err)?;
    let spectrum = sweep(params, &grid, model).map_err(err)?;
    let peaks = find_peaks(&spectrum).map_err(err)?;
    Ok(RabiScan {
        spectrum,
        peaks,
        expected_splitting: rabi,
    })
}

/// One row of the quantum versus semi-classical comparison; ratios are υ/υ₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareRow {
    pub omega_c: f64,
    pub cos2_theta: f64,
    pub analytic_ratio: f64,
    pub full_linear_ratio: f64,
    pub semiclassical_ratio: f64,
}

pub const COMPARE_HEADER: &str = "omega_c,cos2_theta,analytic_ratio,full_linear_ratio,semiclassical_ratio";

impl CompareRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.omega_c, self.cos2_theta, self.analytic_ratio, self.full_linear_ratio, self.semiclassical_ratio
        )
    }
}

/// Linewidth ratios for each Ω. The full-linear FWHM is measured on a grid
/// of `points` samples spanning ±5κ_D. Without explicit semiclassical
/// parameters the derived prefactor mapping is used with the default
/// geometry.
pub fn compare(
    params: &AtomCavityParams,
    semiclassical: Option<&SemiClassicalParams>,
    omegas: &[f64],
    points: usize,
) -> Result<Vec<CompareRow>, CliError> {
    omegas
        .iter()
        .map(|&omega_c| {
            let p = params.with_omega_c(omega_c);
            let quantum_err = |model: Model| move |e| CliError::compute(model, e);
            let basis = make_basis(&p).map_err(quantum_err(Model::AnalyticDark))?;
            let v0 = p.empty_cavity_linewidth();
            let analytic = analytic_linewidth(&p).map_err(quantum_err(Model::AnalyticDark))?;

            let grid = DetuningGrid::symmetric(5.0 * basis.kappa_d, points).map_err(quantum_err(Model::FullLinear))?;
            let full = sweep(&p, &grid, Model::FullLinear)
                .and_then(|s| fwhm_of_central_peak(&s))
                .map_err(quantum_err(Model::FullLinear))?;

            let sc = match semiclassical {
                Some(sc) => Ok(sc.with_omega_c(omega_c)),
                None => SemiClassicalParams::consistent_with(&p, CavityGeometry::default()),
            };
            let (sc_ratio, _) = sc
                .and_then(|sc| semiclassical::semiclassical_linewidth(&sc))
                .map_err(quantum_err(Model::Semiclassical))?;

            Ok(CompareRow {
                omega_c,
                cos2_theta: basis.cos2_theta(),
                analytic_ratio: analytic / v0,
                full_linear_ratio: full / v0,
                semiclassical_ratio: sc_ratio,
            })
        })
        .collect()
}
