//! Cavity transmission of an intracavity EIT medium in the polariton picture.
//!
//! * [`params`]: parameter types, unit convention and validation.
//! * [`polariton`]: dark/bright polariton basis and coupling regimes.
//! * [`quantum`]: analytic dark-polariton and full three-mode spectra.
//! * [`semiclassical`]: susceptibility-based linewidth ratio.
//! * [`lineshape`]: peaks, FWHM and Lorentzian fits.
//!
//! Everything is generic over [`Real`]; the aliases below fix the scalar to
//! `f64` (and `f32` where useful).

pub mod error;
pub mod linalg;
pub mod lineshape;
pub mod params;
pub mod polariton;
pub mod quantum;
pub mod scalar;
pub mod semiclassical;

pub use error::{Error, Result};
pub use lineshape::{analyze, find_peaks, fwhm_of_central_peak, lorentzian_fit, Peak};
pub use params::{validate_params, RateUnit};
pub use polariton::{coupling_regime, make_basis, Regime};
pub use quantum::{analytic_linewidth, dark_output_amplitude, dark_transmission, full_response, sweep, Model};
pub use scalar::Real;
pub use semiclassical::{
    absorption_coefficient, eit_susceptibility, linewidth_ratio, semiclassical_linewidth,
};

pub type AtomCavityParams = params::AtomCavityParams<f64>;
pub type DetuningGrid = params::DetuningGrid<f64>;
pub type PortAmplitudes = params::PortAmplitudes<f64>;
pub type PolaritonBasis = polariton::PolaritonBasis<f64>;
pub type ModeAmplitudes = polariton::ModeAmplitudes<f64>;
pub type PolaritonAmplitudes = polariton::PolaritonAmplitudes<f64>;
pub type RegimeReport = polariton::RegimeReport<f64>;
pub type Spectrum = quantum::Spectrum<f64>;
pub type ParamsSnapshot = quantum::ParamsSnapshot<f64>;
pub type FullResponse = quantum::FullResponse<f64>;
pub type SemiClassicalParams = semiclassical::SemiClassicalParams<f64>;
pub type SemiClassicalIntermediates = semiclassical::SemiClassicalIntermediates<f64>;
pub type CavityGeometry = semiclassical::CavityGeometry<f64>;
pub type LineshapeReport = lineshape::LineshapeReport<f64>;
pub type LorentzianFit = lineshape::LorentzianFit<f64>;

pub type AtomCavityParams32 = params::AtomCavityParams<f32>;
pub type Spectrum32 = quantum::Spectrum<f32>;
