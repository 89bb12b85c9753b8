//! Quantum transmission spectra.
//!
//! Two models share the port convention of the polariton picture: the cavity
//! field decays at total rate κ, each of the two mirrors couples with
//! amplitude √κ, and `α_out + α_in = √κ·a`. Light enters through `β_in`
//! with `α_in = 0`.
//!
//! * [`Model::AnalyticDark`] keeps only the dark polariton, a Lorentzian of
//!   half width κ_D = cos²θ·κ.
//! * [`Model::FullLinear`] solves the un-truncated steady state of
//!   (a, C_e, C_s), which also contains the vacuum Rabi side peaks of the
//!   bright polariton at Δ = ±√(Ng²+Ω²).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::params::{validate_params, AtomCavityParams, DetuningGrid, PortAmplitudes};
use crate::polariton::{make_basis, ModeAmplitudes};
use crate::scalar::Real;
use crate::semiclassical::SemiClassicalParams;

/// Steady-state determinants below this modulus are treated as singular.
pub const SINGULAR_DET: f64 = 1e-300;

/// Slack allowed above unit transmission for quantum models.
pub const TRANSMISSION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    AnalyticDark,
    FullLinear,
    Semiclassical,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::AnalyticDark, Model::FullLinear, Model::Semiclassical];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::AnalyticDark => "analytic-dark",
            Model::FullLinear => "full-linear",
            Model::Semiclassical => "semiclassical",
        }
    }

    pub fn is_quantum(self) -> bool {
        !matches!(self, Model::Semiclassical)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown model `{s}` (expected analytic-dark, full-linear or semiclassical)"))
    }
}

/// Parameters that generated a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Deserialize<'de> + Default + num_traits::One"))]
pub struct ParamsSnapshot<T> {
    pub atom_cavity: AtomCavityParams<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiclassical: Option<SemiClassicalParams<T>>,
}

impl<T> From<AtomCavityParams<T>> for ParamsSnapshot<T> {
    fn from(atom_cavity: AtomCavityParams<T>) -> Self {
        Self {
            atom_cavity,
            semiclassical: None,
        }
    }
}

/// Transmission sampled on an ascending detuning grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Deserialize<'de> + Default + num_traits::One"))]
pub struct Spectrum<T> {
    pub detunings: Vec<T>,
    pub transmission: Vec<T>,
    pub model: Model,
    pub params_snapshot: ParamsSnapshot<T>,
}

impl<T: Real> Spectrum<T> {
    /// Builds a spectrum, checking ordering, lengths and the transmission bound.
    pub fn new(
        detunings: Vec<T>,
        transmission: Vec<T>,
        model: Model,
        params_snapshot: ParamsSnapshot<T>,
    ) -> Result<Self> {
        let s = Self {
            detunings,
            transmission,
            model,
            params_snapshot,
        };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        if self.detunings.len() != self.transmission.len() {
            return Err(Error::MalformedSpectrum(format!(
                "{} detunings but {} transmission values",
                self.detunings.len(),
                self.transmission.len()
            )));
        }
        if let Some(i) = self.detunings.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::MalformedSpectrum(format!(
                "detunings not strictly increasing at index {}",
                i + 1
            )));
        }
        let upper = T::one() + T::lit(TRANSMISSION_SLACK);
        for (&d, &t) in self.detunings.iter().zip(&self.transmission) {
            if !t.is_finite() || t < T::zero() || (self.model.is_quantum() && t > upper) {
                return Err(Error::MalformedSpectrum(format!(
                    "transmission {t} at delta={d} outside the admissible range"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    /// (Δ, T) pairs in ascending Δ.
    pub fn points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.detunings.iter().copied().zip(self.transmission.iter().copied())
    }
}

/// Transmitted amplitude of the dark polariton, κ_D·β_in/(κ_D − iΔ).
pub fn dark_output_amplitude<T: Real>(delta: T, kappa_d: T, beta_in: Complex<T>) -> Result<Complex<T>> {
    if !(kappa_d > T::zero()) {
        return Err(Error::NonPositiveDecay(kappa_d.as_f64()));
    }
    Ok(beta_in * kappa_d / Complex::new(kappa_d, -delta))
}

/// Dark-polariton transmission κ_D²/(κ_D² + Δ²).
pub fn dark_transmission<T: Real>(delta: T, kappa_d: T) -> Result<T> {
    if !(kappa_d > T::zero()) {
        return Err(Error::NonPositiveDecay(kappa_d.as_f64()));
    }
    let k2 = kappa_d * kappa_d;
    Ok(k2 / (k2 + delta * delta))
}

/// Narrowed linewidth υ = 2κ·cos²θ = cos²θ·υ₀.
pub fn analytic_linewidth<T: Real>(p: &AtomCavityParams<T>) -> Result<T> {
    Ok(T::lit(2.0) * make_basis(p)?.kappa_d)
}

/// Steady state of the three coupled modes and the resulting port fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullResponse<T> {
    pub modes: ModeAmplitudes<T>,
    pub ports: PortAmplitudes<T>,
    /// Determinant of the steady-state matrix at this detuning.
    pub determinant: Complex<T>,
}

impl<T: Real> FullResponse<T> {
    pub fn transmission(&self) -> T {
        self.ports.transmission()
    }
}

/// Solves the driven steady state with β_in = 1, α_in = 0:
///
/// ```text
/// (κ − iΔ)·a   + i√N·g·c_e                 = √κ·β_in
/// i√N·g·a      + (γ_e − iΔ)·c_e + iΩ·c_s   = 0
///                iΩ·c_e         + (γ_s − iΔ)·c_s = 0
/// ```
///
/// The system is solved as is, without eliminating `c_s`, so Δ = 0 with
/// γ_s = 0 stays regular (determinant κΩ²).
pub fn full_response<T: Real>(delta: T, p: &AtomCavityParams<T>) -> Result<FullResponse<T>> {
    let p = validate_params(*p)?;
    let zero = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let coupling = i * p.collective_coupling();
    let control = i * p.omega_c;
    let detuning = Complex::new(T::zero(), delta);
    let matrix = [
        [Complex::from(p.kappa) - detuning, coupling, zero],
        [coupling, Complex::from(p.gamma_e) - detuning, control],
        [zero, control, Complex::from(p.gamma_s) - detuning],
    ];
    let sqrt_kappa = p.kappa.sqrt();
    let beta_in = Complex::new(T::one(), T::zero());
    let rhs = [beta_in * sqrt_kappa, zero, zero];
    let min_det = T::lit(SINGULAR_DET).max(T::min_positive_value());

    let sol = linalg::solve(matrix, rhs, min_det).map_err(|det| Error::SingularSystem {
        delta: delta.as_f64(),
        det_modulus: det.norm().as_f64(),
        params: p.to_f64(),
    })?;
    let [a, c_e, c_s] = sol.x;
    let intracavity = a * sqrt_kappa;
    Ok(FullResponse {
        modes: ModeAmplitudes { a, c_e, c_s },
        ports: PortAmplitudes {
            alpha_in: zero,
            beta_in,
            alpha_out: intracavity,
            beta_out: intracavity - beta_in,
        },
        determinant: sol.det,
    })
}

/// Evaluates each grid point independently (in parallel) and keeps grid order.
pub(crate) fn sample<T, F>(grid: &DetuningGrid<T>, eval: F) -> Result<(Vec<T>, Vec<T>)>
where
    T: Real,
    F: Fn(T) -> Result<T> + Sync,
{
    let grid = grid.validate()?;
    let detunings = grid.values();
    let results: Vec<Result<T>> = detunings.par_iter().map(|&d| eval(d)).collect();
    let mut transmission = Vec::with_capacity(results.len());
    for (d, r) in detunings.iter().zip(results) {
        transmission.push(r.map_err(|e| Error::at(d.as_f64(), e))?);
    }
    Ok((detunings, transmission))
}

/// Transmission spectrum of one quantum model over `grid`.
///
/// The semiclassical model needs its own parameters; use
/// [`crate::semiclassical::sweep`] for it.
pub fn sweep<T: Real>(p: &AtomCavityParams<T>, grid: &DetuningGrid<T>, model: Model) -> Result<Spectrum<T>> {
    let p = validate_params(*p)?;
    let (detunings, transmission) = match model {
        Model::AnalyticDark => {
            let kappa_d = make_basis(&p)?.kappa_d;
            sample(grid, |d| dark_transmission(d, kappa_d))?
        }
        Model::FullLinear => sample(grid, |d| full_response(d, &p).map(|r| r.transmission()))?,
        Model::Semiclassical => return Err(Error::MissingSemiclassical(model.as_str())),
    };
    Spectrum::new(detunings, transmission, model, p.into())
}
