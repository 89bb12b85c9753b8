//! Lineshape measurements on sampled spectra: local maxima, the FWHM of the
//! central peak by interpolated half-maximum crossings, and a least-squares
//! Lorentzian fit.
//!
//! The FWHM does not assume any lineshape. The fit is the stricter
//! instrument: its residual flags non-Lorentzian shapes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::quantum::Spectrum;
use crate::scalar::Real;

pub const FIT_MAX_ITERATIONS: usize = 200;
pub const FIT_RELATIVE_TOLERANCE: f64 = 1e-10;

/// Largest damping tried before a fit is considered stationary.
const MAX_DAMPING: f64 = 1e16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak<T> {
    pub position: T,
    pub height: T,
}

/// Peak plus the sample range it occupies (a plateau spans several samples).
#[derive(Debug, Clone, Copy)]
struct PeakSpan<T> {
    peak: Peak<T>,
    first: usize,
    last: usize,
}

fn peak_spans<T: Real>(s: &Spectrum<T>) -> Result<Vec<PeakSpan<T>>> {
    let n = s.len();
    if n < 3 {
        return Err(Error::SpectrumTooShort { len: n, min: 3 });
    }
    let t = &s.transmission;
    let mut spans = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if t[i] > t[i - 1] {
            let mut j = i;
            while j + 1 < n && t[j + 1] == t[i] {
                j += 1;
            }
            if j + 1 < n && t[j + 1] < t[i] {
                let position = (s.detunings[i] + s.detunings[j]) / T::lit(2.0);
                spans.push(PeakSpan {
                    peak: Peak { position, height: t[i] },
                    first: i,
                    last: j,
                });
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    Ok(spans)
}

/// Strict local maxima in ascending Δ. A plateau counts once, at its midpoint.
pub fn find_peaks<T: Real>(s: &Spectrum<T>) -> Result<Vec<Peak<T>>> {
    Ok(peak_spans(s)?.into_iter().map(|span| span.peak).collect())
}

fn central_span<T: Real>(s: &Spectrum<T>) -> Result<PeakSpan<T>> {
    peak_spans(s)?
        .into_iter()
        .min_by(|a, b| {
            a.peak
                .position
                .abs()
                .partial_cmp(&b.peak.position.abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .ok_or(Error::NoPeak)
}

/// Full width at half maximum of the peak nearest Δ = 0.
///
/// Half-maximum crossings are located by linear interpolation between the
/// bracketing samples.
pub fn fwhm_of_central_peak<T: Real>(s: &Spectrum<T>) -> Result<T> {
    let span = central_span(s)?;
    let half = span.peak.height / T::lit(2.0);
    let d = &s.detunings;
    let t = &s.transmission;
    let lowest = |range: &[T]| range.iter().copied().fold(T::infinity(), T::min).as_f64();

    let left = (0..span.first)
        .rev()
        .find(|&k| t[k] <= half)
        .map(|k| d[k] + (half - t[k]) * (d[k + 1] - d[k]) / (t[k + 1] - t[k]))
        .ok_or_else(|| Error::HalfMaxNotBracketed {
            side: "left",
            min_transmission: lowest(&t[..span.first]),
        })?;
    let right = (span.last + 1..s.len())
        .find(|&k| t[k] <= half)
        .map(|k| d[k - 1] + (t[k - 1] - half) * (d[k] - d[k - 1]) / (t[k - 1] - t[k]))
        .ok_or_else(|| Error::HalfMaxNotBracketed {
            side: "right",
            min_transmission: lowest(&t[span.last + 1..]),
        })?;
    Ok(right - left)
}

/// Parameters of `T(Δ) = A·w²/(w² + (Δ − Δ₀)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzianFit<T> {
    pub center: T,
    /// Half width at half maximum w.
    pub width: T,
    pub amplitude: T,
    /// Root-mean-square residual over all samples.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Real> LorentzianFit<T> {
    pub fn eval(&self, delta: T) -> T {
        lorentzian(delta, [self.center, self.width, self.amplitude])
    }
}

fn lorentzian<T: Real>(x: T, [center, width, amplitude]: [T; 3]) -> T {
    let w2 = width * width;
    let u = x - center;
    amplitude * w2 / (w2 + u * u)
}

fn sum_sq<T: Real>(s: &Spectrum<T>, p: [T; 3]) -> T {
    s.points().fold(T::zero(), |acc, (x, y)| {
        let r = y - lorentzian(x, p);
        acc + r * r
    })
}

/// Damped Gauss–Newton (Levenberg–Marquardt) fit of a single Lorentzian,
/// started from the central peak and its measured FWHM.
pub fn lorentzian_fit<T: Real>(s: &Spectrum<T>) -> Result<LorentzianFit<T>> {
    if s.len() < 5 {
        return Err(Error::SpectrumTooShort { len: s.len(), min: 5 });
    }
    let span = central_span(s)?;
    if !(span.peak.height > T::zero()) {
        return Err(Error::NoPeak);
    }
    let fwhm = fwhm_of_central_peak(s)?;
    let two = T::lit(2.0);
    let tol = T::lit(FIT_RELATIVE_TOLERANCE).max(T::lit(100.0) * T::epsilon());
    let min_det = T::min_positive_value();

    let mut p = [span.peak.position, fwhm / two, span.peak.height];
    let mut cost = sum_sq(s, p);
    let initial_cost = cost;
    let mut damping = T::lit(1e-3);
    let mut converged = cost == T::zero();
    let mut iterations = 0;

    while !converged && iterations < FIT_MAX_ITERATIONS {
        iterations += 1;
        let [center, width, amplitude] = p;
        let w2 = width * width;
        let mut jtj = [[T::zero(); 3]; 3];
        let mut jtr = [T::zero(); 3];
        for (x, y) in s.points() {
            let u = x - center;
            let denom = w2 + u * u;
            let shape = w2 / denom;
            let f = amplitude * shape;
            let jac = [
                two * amplitude * shape * u / denom,
                two * amplitude * width * u * u / (denom * denom),
                shape,
            ];
            let r = y - f;
            for a in 0..3 {
                jtr[a] += jac[a] * r;
                for b in 0..3 {
                    jtj[a][b] += jac[a] * jac[b];
                }
            }
        }

        let mut accepted = false;
        while damping <= T::lit(MAX_DAMPING) {
            let mut lhs = jtj;
            for (k, row) in lhs.iter_mut().enumerate() {
                row[k] += damping * jtj[k][k].max(T::min_positive_value());
            }
            let step = match linalg::solve(lhs, jtr, min_det) {
                Ok(sol) => sol.x,
                Err(_) => {
                    damping *= T::lit(10.0);
                    continue;
                }
            };
            let trial = [p[0] + step[0], p[1] + step[1], p[2] + step[2]];
            let trial_cost = sum_sq(s, trial);
            if trial_cost.is_finite() && trial_cost < cost {
                let scale = [p[1].abs().max(p[0].abs()), p[1].abs(), p[2].abs()];
                converged = (0..3).all(|k| step[k].abs() <= tol * scale[k]);
                p = trial;
                cost = trial_cost;
                damping = (damping / T::lit(10.0)).max(T::lit(1e-15));
                accepted = true;
                break;
            }
            damping *= T::lit(10.0);
        }
        if !accepted {
            // No damping reduces the cost: the fit is at a stationary point.
            converged = true;
        }
    }

    if !converged {
        return Err(Error::FitNotConverged {
            iterations,
            trace: format!(
                "cost {:.3e} -> {:.3e}, damping {:.1e}, params (center {}, width {}, amplitude {})",
                initial_cost.as_f64(),
                cost.as_f64(),
                damping.as_f64(),
                p[0],
                p[1],
                p[2]
            ),
        });
    }
    let n = T::from_usize(s.len()).expect("spectrum length");
    Ok(LorentzianFit {
        center: p[0],
        width: p[1].abs(),
        amplitude: p[2],
        residual: (cost / n).sqrt(),
        iterations,
    })
}

/// Lineshape summary of one spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineshapeReport<T> {
    pub peak_positions: Vec<T>,
    pub peak_heights: Vec<T>,
    /// FWHM of the central peak.
    pub fwhm: T,
    pub fit_center: T,
    /// Half width of the fitted Lorentzian.
    pub fit_width: T,
    pub fit_amplitude: T,
    pub fit_residual: T,
}

pub fn analyze<T: Real>(s: &Spectrum<T>) -> Result<LineshapeReport<T>> {
    let peaks = find_peaks(s)?;
    let fwhm = fwhm_of_central_peak(s)?;
    let fit = lorentzian_fit(s)?;
    Ok(LineshapeReport {
        peak_positions: peaks.iter().map(|p| p.position).collect(),
        peak_heights: peaks.iter().map(|p| p.height).collect(),
        fwhm,
        fit_center: fit.center,
        fit_width: fit.width,
        fit_amplitude: fit.amplitude,
        fit_residual: fit.residual,
    })
}
