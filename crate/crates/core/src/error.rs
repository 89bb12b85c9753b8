use thiserror::Error;

use crate::params::AtomCavityParams;

/// Errors raised by the model, solver and lineshape routines.
///
/// Payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} must be non-negative, got {value}")]
    NegativeRate { name: &'static str, value: f64 },

    #[error("kappa must be strictly positive, got {0}")]
    NonPositiveKappa(f64),

    #[error("polariton basis undefined: n_atoms*g^2 + omega_c^2 = 0")]
    BasisUndefined,

    #[error("detuning grid needs min < max, got min={min}, max={max}")]
    GridOrder { min: f64, max: f64 },

    #[error("detuning grid needs at least 2 points, got {0}")]
    GridPoints(usize),

    #[error("dark-polariton decay rate must be positive, got {0}")]
    NonPositiveDecay(f64),

    #[error("steady-state system singular at delta={delta} (|det|={det_modulus:e}) for {params:?}")]
    SingularSystem {
        delta: f64,
        det_modulus: f64,
        params: AtomCavityParams<f64>,
    },

    #[error("model {0} cannot be swept without semiclassical parameters")]
    MissingSemiclassical(&'static str),

    #[error("at delta={delta}: {source}")]
    AtDetuning {
        delta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("semiclassical parameter {name}: {reason}")]
    InvalidSemiclassical { name: &'static str, reason: String },

    #[error("susceptibility denominator vanishes (gamma_e = gamma_s = omega_c = delta = 0)")]
    SusceptibilityPole,

    #[error("negative chi'' = {0} describes a gain medium, which is not modelled")]
    GainMedium(f64),

    #[error("linewidth ratio input {name} out of range: {value}")]
    RatioDomain { name: &'static str, value: f64 },

    #[error("spectrum has {len} points, at least {min} required")]
    SpectrumTooShort { len: usize, min: usize },

    #[error("spectrum is malformed: {0}")]
    MalformedSpectrum(String),

    #[error("no local maximum found in spectrum")]
    NoPeak,

    #[error(
        "half maximum not reached on the {side} side of the peak (lowest T there = {min_transmission}); widen the grid"
    )]
    HalfMaxNotBracketed {
        side: &'static str,
        min_transmission: f64,
    },

    #[error("Lorentzian fit did not converge after {iterations} iterations: {trace}")]
    FitNotConverged { iterations: usize, trace: String },
}

impl Error {
    pub(crate) fn at(delta: f64, source: Error) -> Self {
        Error::AtDetuning {
            delta,
            source: Box::new(source),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
