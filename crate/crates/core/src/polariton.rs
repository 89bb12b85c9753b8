//! Dark and bright cavity polaritons.
//!
//! The control field mixes the cavity field `a` with the collective spin
//! coherence `C_s`:
//!
//! ```text
//! m_D = cosθ·a − sinθ·C_s      m_B = sinθ·a + cosθ·C_s
//! cosθ = Ω/√(Ng²+Ω²)           sinθ = √N·g/√(Ng²+Ω²)
//! ```
//!
//! Only `m_B` couples to the excited state, with strength √(Ng²+Ω²). The
//! mirror coupling splits as κ_D = cos²θ·κ and κ_B = sin²θ·κ.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::params::{validate_params, AtomCavityParams};
use crate::scalar::Real;

/// Factor quantifying "≫" in the strong-coupling conditions.
pub const STRONG_COUPLING_FACTOR: f64 = 10.0;

/// Mixing angle and decay rates of the polariton pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolaritonBasis<T> {
    pub cos_theta: T,
    pub sin_theta: T,
    /// κ_D = cos²θ·κ
    pub kappa_d: T,
    /// κ_B = sin²θ·κ
    pub kappa_b: T,
    /// √(Ng²+Ω²)
    pub collective_rabi: T,
}

/// Bare-mode amplitudes: cavity field and the two collective atomic modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeAmplitudes<T> {
    pub a: Complex<T>,
    pub c_e: Complex<T>,
    pub c_s: Complex<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolaritonAmplitudes<T> {
    pub m_d: Complex<T>,
    pub m_b: Complex<T>,
}

impl<T: Real> PolaritonBasis<T> {
    pub fn cos2_theta(&self) -> T {
        self.cos_theta * self.cos_theta
    }

    pub fn sin2_theta(&self) -> T {
        self.sin_theta * self.sin_theta
    }

    /// Rotates (a, C_s) into (m_D, m_B). `c_e` is not part of the pair.
    pub fn to_polariton(&self, m: &ModeAmplitudes<T>) -> PolaritonAmplitudes<T> {
        PolaritonAmplitudes {
            m_d: m.a * self.cos_theta - m.c_s * self.sin_theta,
            m_b: m.a * self.sin_theta + m.c_s * self.cos_theta,
        }
    }

    /// Inverse rotation. The returned `c_e` is zero.
    pub fn from_polariton(&self, m: &PolaritonAmplitudes<T>) -> ModeAmplitudes<T> {
        ModeAmplitudes {
            a: m.m_d * self.cos_theta + m.m_b * self.sin_theta,
            c_e: Complex::new(T::zero(), T::zero()),
            c_s: m.m_b * self.cos_theta - m.m_d * self.sin_theta,
        }
    }
}

pub fn make_basis<T: Real>(p: &AtomCavityParams<T>) -> Result<PolaritonBasis<T>> {
    let p = validate_params(*p)?;
    let ng2 = p.collective_coupling_sq();
    let omega2 = p.omega_c * p.omega_c;
    let rabi_sq = ng2 + omega2;
    let collective_rabi = rabi_sq.sqrt();
    Ok(PolaritonBasis {
        cos_theta: p.omega_c / collective_rabi,
        sin_theta: ng2.sqrt() / collective_rabi,
        kappa_d: p.kappa * (omega2 / rabi_sq),
        kappa_b: p.kappa * (ng2 / rabi_sq),
        collective_rabi,
    })
}

/// Free-function form of [`PolaritonBasis::to_polariton`].
pub fn to_polariton<T: Real>(m: &ModeAmplitudes<T>, b: &PolaritonBasis<T>) -> PolaritonAmplitudes<T> {
    b.to_polariton(m)
}

/// Free-function form of [`PolaritonBasis::from_polariton`].
pub fn from_polariton<T: Real>(m: &PolaritonAmplitudes<T>, b: &PolaritonBasis<T>) -> ModeAmplitudes<T> {
    b.from_polariton(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    CollectiveStrong,
    Weak,
    Marginal,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::CollectiveStrong => "collective-strong",
            Regime::Weak => "weak",
            Regime::Marginal => "marginal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport<T> {
    /// √(Ng²+Ω²)/max(κ_B, γ_e); infinite when both rates vanish.
    pub margin: T,
    pub label: Regime,
    /// Factor used for "≫" when labelling.
    pub threshold: T,
}

/// Strong-coupling margin of the bright polariton and the collective regime.
///
/// The label compares √N·g with max(κ, γ_e): collective-strong at or above
/// [`STRONG_COUPLING_FACTOR`] times it, weak at or below it.
pub fn coupling_regime<T: Real>(p: &AtomCavityParams<T>) -> Result<RegimeReport<T>> {
    let basis = make_basis(p)?;
    let loss = basis.kappa_b.max(p.gamma_e);
    let margin = if loss > T::zero() {
        basis.collective_rabi / loss
    } else {
        T::infinity()
    };
    let threshold = T::lit(STRONG_COUPLING_FACTOR);
    let sqrt_n_g = p.collective_coupling();
    let bare_loss = p.kappa.max(p.gamma_e);
    let label = if sqrt_n_g >= threshold * bare_loss {
        Regime::CollectiveStrong
    } else if sqrt_n_g <= bare_loss {
        Regime::Weak
    } else {
        Regime::Marginal
    };
    Ok(RegimeReport {
        margin,
        label,
        threshold,
    })
}
