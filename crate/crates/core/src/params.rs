//! Parameter types, the rate-unit convention and validation.
//!
//! Every rate (couplings, decays, detunings) is expressed in one declared
//! [`RateUnit`]. The default is units of the bare cavity decay κ, so that
//! κ = 1. Dimensionless outputs (transmission, cos²θ, υ/υ₀) do not depend on
//! the unit, see [`AtomCavityParams::scaled`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Unit in which all rates of a run are expressed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateUnit {
    /// Dimensionless, in multiples of the bare cavity decay rate κ.
    #[default]
    Kappa,
    Hz,
    Khz,
    Mhz,
    Ghz,
}

impl RateUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            RateUnit::Kappa => "kappa",
            RateUnit::Hz => "hz",
            RateUnit::Khz => "khz",
            RateUnit::Mhz => "mhz",
            RateUnit::Ghz => "ghz",
        }
    }
}

impl fmt::Display for RateUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RateUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kappa" => Ok(RateUnit::Kappa),
            "hz" => Ok(RateUnit::Hz),
            "khz" => Ok(RateUnit::Khz),
            "mhz" => Ok(RateUnit::Mhz),
            "ghz" => Ok(RateUnit::Ghz),
            other => Err(format!("unknown rate unit `{other}`")),
        }
    }
}

/// Physical rates and atom number of the atom–cavity system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct AtomCavityParams<T> {
    /// Number of atoms N.
    pub n_atoms: u64,
    /// Single-atom coupling g.
    pub g: T,
    /// Control-field Rabi coupling Ω.
    pub omega_c: T,
    /// Bare cavity decay rate κ.
    pub kappa: T,
    /// Excited-state spontaneous-emission rate γ_e.
    pub gamma_e: T,
    /// Ground-state coherence decay rate γ_s.
    #[serde(default)]
    pub gamma_s: T,
}

impl<T: Real> AtomCavityParams<T> {
    /// Parameters with γ_s = 0.
    pub fn new(n_atoms: u64, g: T, omega_c: T, kappa: T, gamma_e: T) -> Self {
        Self {
            n_atoms,
            g,
            omega_c,
            kappa,
            gamma_e,
            gamma_s: T::zero(),
        }
    }

    pub fn with_gamma_s(mut self, gamma_s: T) -> Self {
        self.gamma_s = gamma_s;
        self
    }

    pub fn with_omega_c(mut self, omega_c: T) -> Self {
        self.omega_c = omega_c;
        self
    }

    /// N·g², the squared collective coupling.
    pub fn collective_coupling_sq(&self) -> T {
        T::from_count(self.n_atoms) * self.g * self.g
    }

    /// √N·g.
    pub fn collective_coupling(&self) -> T {
        self.collective_coupling_sq().sqrt()
    }

    /// Empty-cavity linewidth υ₀ = 2κ.
    pub fn empty_cavity_linewidth(&self) -> T {
        T::lit(2.0) * self.kappa
    }

    /// Same system with every rate multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            n_atoms: self.n_atoms,
            g: self.g * factor,
            omega_c: self.omega_c * factor,
            kappa: self.kappa * factor,
            gamma_e: self.gamma_e * factor,
            gamma_s: self.gamma_s * factor,
        }
    }

    pub fn validate(self) -> Result<Self> {
        validate_params(self)
    }

    pub fn to_f64(&self) -> AtomCavityParams<f64> {
        AtomCavityParams {
            n_atoms: self.n_atoms,
            g: self.g.as_f64(),
            omega_c: self.omega_c.as_f64(),
            kappa: self.kappa.as_f64(),
            gamma_e: self.gamma_e.as_f64(),
            gamma_s: self.gamma_s.as_f64(),
        }
    }
}

/// Returns `p` unchanged if every invariant holds.
pub fn validate_params<T: Real>(p: AtomCavityParams<T>) -> Result<AtomCavityParams<T>> {
    let rates = [
        ("g", p.g),
        ("omega_c", p.omega_c),
        ("kappa", p.kappa),
        ("gamma_e", p.gamma_e),
        ("gamma_s", p.gamma_s),
    ];
    for (name, value) in rates {
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
    if p.kappa <= T::zero() {
        return Err(Error::NonPositiveKappa(p.kappa.as_f64()));
    }
    if p.collective_coupling_sq() + p.omega_c * p.omega_c <= T::zero() {
        return Err(Error::BasisUndefined);
    }
    Ok(p)
}

/// Uniform detuning grid Δ = ω − ω₀, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetuningGrid<T> {
    pub min: T,
    pub max: T,
    pub points: usize,
}

impl<T: Real> DetuningGrid<T> {
    pub fn new(min: T, max: T, points: usize) -> Result<Self> {
        Self { min, max, points }.validate()
    }

    /// Grid symmetric about zero.
    pub fn symmetric(half_span: T, points: usize) -> Result<Self> {
        Self::new(-half_span, half_span, points)
    }

    pub fn validate(self) -> Result<Self> {
        for (name, value) in [("min", self.min), ("max", self.max)] {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        if self.points < 2 {
            return Err(Error::GridPoints(self.points));
        }
        if self.min >= self.max {
            return Err(Error::GridOrder {
                min: self.min.as_f64(),
                max: self.max.as_f64(),
            });
        }
        Ok(self)
    }

    pub fn step(&self) -> T {
        (self.max - self.min) / T::from_usize(self.points - 1).expect("grid size")
    }

    /// The `i`-th detuning. The last point is exactly `max`.
    pub fn value(&self, i: usize) -> T {
        if i + 1 == self.points {
            return self.max;
        }
        let frac = T::from_usize(i).expect("grid index") / T::from_usize(self.points - 1).expect("grid size");
        self.min + (self.max - self.min) * frac
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// Field amplitudes at the two mirror ports, normalized to the drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortAmplitudes<T> {
    pub alpha_in: Complex<T>,
    pub beta_in: Complex<T>,
    pub alpha_out: Complex<T>,
    pub beta_out: Complex<T>,
}

impl<T: Real> PortAmplitudes<T> {
    /// Transmitted intensity |α_out|²/|β_in|².
    pub fn transmission(&self) -> T {
        self.alpha_out.norm_sqr() / self.beta_in.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        [self.alpha_in, self.beta_in, self.alpha_out, self.beta_out]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}
