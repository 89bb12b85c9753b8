//! Semi-classical intracavity EIT: the medium enters only through its linear
//! susceptibility χ = χ' + iχ''.
//!
//! The cavity linewidth relative to the empty cavity is
//!
//! ```text
//! υ/υ₀ = (1 − r·τ) / (√τ·(1 − r)) · 1/(1 + η)
//! τ = exp(−α·l),  α = 2π·ω_p·χ''/c,  η = ω_r·(l/2L)·∂χ'/∂ω_p
//! ```
//!
//! with χ taken from the standard Λ-system form
//! `χ(δ) = i·C·(γ_s − iδ) / ((γ_e − iδ)(γ_s − iδ) + Ω²)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{validate_params, AtomCavityParams, DetuningGrid};
use crate::quantum::{dark_transmission, sample, Model, ParamsSnapshot, Spectrum};
use crate::scalar::Real;

/// Relative finite-difference step for ∂χ'/∂ω_p, in units of Ω²/max(γ_e, 1).
pub const DERIVATIVE_STEP: f64 = 1e-4;

fn unit_speed<T: num_traits::One>() -> T {
    T::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Deserialize<'de> + Default + num_traits::One"))]
pub struct SemiClassicalParams<T> {
    /// Medium length l.
    pub length_medium: T,
    /// Cavity length L.
    pub length_cavity: T,
    /// Mirror intensity reflectivity r, 0 < r < 1.
    pub reflectivity: T,
    /// Cavity resonance ω_r.
    pub omega_r: T,
    /// Susceptibility scale C.
    pub chi_prefactor: T,
    pub gamma_e: T,
    #[serde(default)]
    pub gamma_s: T,
    pub omega_c: T,
    /// Probe frequency ω_p entering α.
    pub probe_frequency: T,
    /// Speed of light; 1 in normalized units.
    #[serde(default = "unit_speed")]
    pub c_light: T,
}

/// Cavity geometry used by [`SemiClassicalParams::consistent_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityGeometry<T> {
    pub length_medium: T,
    pub length_cavity: T,
    pub reflectivity: T,
    pub omega_r: T,
}

impl<T: Real> Default for CavityGeometry<T> {
    fn default() -> Self {
        Self {
            length_medium: T::one(),
            length_cavity: T::one(),
            reflectivity: T::lit(0.99),
            omega_r: T::one(),
        }
    }
}

impl<T: Real> SemiClassicalParams<T> {
    /// Derived mapping C = 2L·Ng²/(l·ω_r).
    ///
    /// This choice is not a physical identity: it is the prefactor for which
    /// the dispersive pulling factor becomes η = Ng²/Ω², so that the
    /// semi-classical ratio reproduces cos²θ when γ_s = 0.
    pub fn consistent_with(p: &AtomCavityParams<T>, geometry: CavityGeometry<T>) -> Result<Self> {
        let p = validate_params(*p)?;
        let chi_prefactor = T::lit(2.0) * geometry.length_cavity * p.collective_coupling_sq()
            / (geometry.length_medium * geometry.omega_r);
        Self {
            length_medium: geometry.length_medium,
            length_cavity: geometry.length_cavity,
            reflectivity: geometry.reflectivity,
            omega_r: geometry.omega_r,
            chi_prefactor,
            gamma_e: p.gamma_e,
            gamma_s: p.gamma_s,
            omega_c: p.omega_c,
            probe_frequency: geometry.omega_r,
            c_light: T::one(),
        }
        .validate()
    }

    pub fn with_omega_c(mut self, omega_c: T) -> Self {
        self.omega_c = omega_c;
        self
    }

    pub fn validate(self) -> Result<Self> {
        let fields = [
            ("length_medium", self.length_medium),
            ("length_cavity", self.length_cavity),
            ("reflectivity", self.reflectivity),
            ("omega_r", self.omega_r),
            ("chi_prefactor", self.chi_prefactor),
            ("gamma_e", self.gamma_e),
            ("gamma_s", self.gamma_s),
            ("omega_c", self.omega_c),
            ("probe_frequency", self.probe_frequency),
            ("c_light", self.c_light),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    name,
                    value: value.as_f64(),
                });
            }
            if value < T::zero() {
                return Err(Error::NegativeRate {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        let invalid = |name, reason: &str| {
            Err(Error::InvalidSemiclassical {
                name,
                reason: reason.to_string(),
            })
        };
        if !(self.reflectivity > T::zero() && self.reflectivity < T::one()) {
            return invalid("reflectivity", "must satisfy 0 < r < 1");
        }
        if self.length_medium <= T::zero() {
            return invalid("length_medium", "must be positive");
        }
        if self.length_cavity < self.length_medium {
            return invalid("length_cavity", "must be at least length_medium");
        }
        if self.omega_r <= T::zero() {
            return invalid("omega_r", "must be positive");
        }
        if self.c_light <= T::zero() {
            return invalid("c_light", "must be positive");
        }
        Ok(self)
    }

    /// Finite-difference step: 1e-4 of the transparency window Ω²/max(γ_e, 1),
    /// capped at 1e-4·Ω once the window outgrows the Autler–Townes splitting.
    /// Falls back to 1e-4·max(γ_e, 1) when Ω = 0.
    pub fn derivative_step(&self) -> T {
        let scale = self.gamma_e.max(T::one());
        let omega = self.omega_c;
        if omega > T::zero() {
            T::lit(DERIVATIVE_STEP) * omega * (omega / scale).min(T::one())
        } else {
            T::lit(DERIVATIVE_STEP) * scale
        }
    }
}

/// Quantities produced on the way to the linewidth ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiClassicalIntermediates<T> {
    /// χ at line center.
    pub chi: Complex<T>,
    /// α = 2π·ω_p·χ''/c.
    pub alpha: T,
    /// τ = exp(−α·l).
    pub tau: T,
    /// ∂χ'/∂ω_p at line center.
    pub dispersion_slope: T,
    /// η = ω_r·(l/2L)·∂χ'/∂ω_p.
    pub eta: T,
}

/// Λ-system susceptibility at two-photon detuning `delta`.
///
/// Without control field the ground-coherence factor cancels and the
/// two-level form `i·C/(γ_e − iδ)` is used, so Ω = γ_s = δ = 0 stays regular.
pub fn eit_susceptibility<T: Real>(delta: T, p: &SemiClassicalParams<T>) -> Result<Complex<T>> {
    let i = Complex::new(T::zero(), T::one());
    let excited = Complex::new(p.gamma_e, -delta);
    let (numer, denom) = if p.omega_c == T::zero() {
        (Complex::from(T::one()), excited)
    } else {
        let ground = Complex::new(p.gamma_s, -delta);
        (ground, excited * ground + p.omega_c * p.omega_c)
    };
    if denom.norm_sqr() == T::zero() {
        return Err(Error::SusceptibilityPole);
    }
    Ok(i * p.chi_prefactor * numer / denom)
}

/// α = 2π·ω_p·χ''/c.
pub fn absorption_coefficient<T: Real>(chi_imag: T, omega_p: T, c_light: T) -> Result<T> {
    if chi_imag < T::zero() {
        return Err(Error::GainMedium(chi_imag.as_f64()));
    }
    Ok(T::TAU() * omega_p * chi_imag / c_light)
}

/// υ/υ₀ = (1 − r·τ)/(√τ·(1 − r)) · 1/(1 + η).
pub fn linewidth_ratio<T: Real>(tau: T, r: T, eta: T) -> Result<T> {
    if !(tau > T::zero() && tau <= T::one()) {
        return Err(Error::RatioDomain {
            name: "tau",
            value: tau.as_f64(),
        });
    }
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::RatioDomain {
            name: "reflectivity",
            value: r.as_f64(),
        });
    }
    if !(eta >= T::zero()) || !eta.is_finite() {
        return Err(Error::RatioDomain {
            name: "eta",
            value: eta.as_f64(),
        });
    }
    Ok((T::one() - r * tau) / (tau.sqrt() * (T::one() - r)) / (T::one() + eta))
}

/// Central-difference slope of χ' at line center.
pub fn dispersion_slope<T: Real>(p: &SemiClassicalParams<T>) -> Result<T> {
    let h = p.derivative_step();
    let ahead = eit_susceptibility(h, p)?.re;
    let behind = eit_susceptibility(-h, p)?.re;
    Ok((ahead - behind) / (T::lit(2.0) * h))
}

/// Linewidth ratio υ/υ₀ of the cavity filled with the EIT medium, probed at
/// line center.
pub fn semiclassical_linewidth<T: Real>(p: &SemiClassicalParams<T>) -> Result<(T, SemiClassicalIntermediates<T>)> {
    let p = p.validate()?;
    let chi = eit_susceptibility(T::zero(), &p)?;
    let alpha = absorption_coefficient(chi.im, p.probe_frequency, p.c_light)?;
    let tau = (-alpha * p.length_medium).exp();
    let slope = dispersion_slope(&p)?;
    let eta = p.omega_r * (p.length_medium / (T::lit(2.0) * p.length_cavity)) * slope;
    let ratio = linewidth_ratio(tau, p.reflectivity, eta)?;
    Ok((
        ratio,
        SemiClassicalIntermediates {
            chi,
            alpha,
            tau,
            dispersion_slope: slope,
            eta,
        },
    ))
}

/// Normalized Lorentzian transmission with the semi-classical linewidth
/// `ratio·2κ`, where κ comes from `p`.
pub fn sweep<T: Real>(
    p: &AtomCavityParams<T>,
    sc: &SemiClassicalParams<T>,
    grid: &DetuningGrid<T>,
) -> Result<Spectrum<T>> {
    let p = validate_params(*p)?;
    let (ratio, _) = semiclassical_linewidth(sc)?;
    let half_width = ratio * p.kappa;
    let (detunings, transmission) = sample(grid, |d| dark_transmission(d, half_width))?;
    Spectrum::new(
        detunings,
        transmission,
        Model::Semiclassical,
        ParamsSnapshot {
            atom_cavity: p,
            semiclassical: Some(*sc),
        },
    )
}
