//! Effective Reynolds numbers from a fitted region-(I) power law, their
//! consistency, and the universal-coordinate collapse diagnostics.
//!
//! A region-(I) fit `phi = A eta^alpha` yields two independent estimates,
//! `ln Re1 = sqrt(3) (A - 5/2)` from the prefactor and `ln Re2 = 3 / (2 alpha)`
//! from the exponent. Their mean is the effective `ln Re` of the flow.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scaling_model::{prefactor_of_alpha, WallUnits, EXPONENT_NUMERATOR, PREFACTOR_OFFSET, SQRT_3};

/// Default relative-discrepancy threshold between `ln Re1` and `ln Re2`.
pub const DEFAULT_CONSISTENCY_TOL: f64 = 0.03;
/// Default `|mean_shift|` below which a series counts as collapsed.
pub const DEFAULT_SHIFT_TOL: f64 = 0.1;

/// `ln Re1` solving `ln Re1 / sqrt(3) + 5/2 = A`.
pub fn ln_re1_from_prefactor(prefactor: f64) -> Result<f64> {
    if !(prefactor >= PREFACTOR_OFFSET) || !prefactor.is_finite() {
        return Err(Error::Domain { what: "prefactor A must exceed 5/2", value: prefactor });
    }
    Ok(SQRT_3 * (prefactor - PREFACTOR_OFFSET))
}

/// `ln Re2` solving `3 / (2 ln Re2) = alpha`.
pub fn ln_re2_from_exponent(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain { what: "alpha must be positive", value: alpha });
    }
    Ok(EXPONENT_NUMERATOR / alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReynoldsDiagnostics {
    pub ln_re1: f64,
    pub ln_re2: f64,
    pub ln_re_mean: f64,
    /// `|ln Re1 - ln Re2| / ln Re_mean`.
    pub rel_discrepancy: f64,
    /// `Re_theta / Re`, equal to `theta / Lambda`.
    pub re_theta_over_re: Option<f64>,
    pub consistent: bool,
    pub tolerance: f64,
}

pub fn combine_reynolds(ln_re1: f64, ln_re2: f64, re_theta: Option<f64>, tol: f64) -> Result<ReynoldsDiagnostics> {
    for v in [ln_re1, ln_re2] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain { what: "ln Re estimates must be positive", value: v });
        }
    }
    let ln_re_mean = 0.5 * (ln_re1 + ln_re2);
    let rel_discrepancy = (ln_re1 - ln_re2).abs() / ln_re_mean;
    Ok(ReynoldsDiagnostics {
        ln_re1,
        ln_re2,
        ln_re_mean,
        rel_discrepancy,
        re_theta_over_re: re_theta.map(|rt| rt / libm::exp(ln_re_mean)),
        consistent: rel_discrepancy <= tol,
        tolerance: tol,
    })
}

/// Which `ln Re` sets the exponent used in the universal transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaSource {
    /// `alpha = 3 / (2 ln Re_mean)`.
    #[default]
    Mean,
    /// `alpha = 3 / (2 ln Re1)`, for data where the two estimates disagree (rough walls).
    LnRe1,
}

impl ReynoldsDiagnostics {
    pub fn alpha_for(&self, source: AlphaSource) -> f64 {
        let ln_re = match source {
            AlphaSource::Mean => self.ln_re_mean,
            AlphaSource::LnRe1 => self.ln_re1,
        };
        EXPONENT_NUMERATOR / ln_re
    }
}

/// `psi = (1/alpha) ln(2 alpha phi / (sqrt(3) + 5 alpha))`; equals `ln eta` on the power law.
pub fn psi_transform(phi: f64, alpha: f64) -> Result<f64> {
    if !(phi > 0.0) || !phi.is_finite() {
        return Err(Error::Domain { what: "phi must be positive", value: phi });
    }
    let a = prefactor_of_alpha(alpha)?;
    Ok(libm::log(phi / a) / alpha)
}

/// Profile samples in `(ln eta, psi)` coordinates with their offset from the bisectrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UniversalSeries {
    /// `(ln eta, psi)` pairs.
    pub points: Vec<(f64, f64)>,
    /// Mean of `ln eta - psi`; positive means the points lie below the bisectrix.
    pub mean_shift: f64,
    /// RMS of `ln eta - psi` about `mean_shift`.
    pub rms_scatter: f64,
    pub alpha: f64,
}

pub fn build_universal_series(samples: &[WallUnits], alpha: f64) -> Result<UniversalSeries> {
    if samples.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let points = samples.iter().map(|s| Ok((s.ln_eta(), psi_transform(s.phi, alpha)?))).collect::<Result<Vec<_>>>()?;
    let n = points.len() as f64;
    let mean_shift = points.iter().map(|(x, psi)| x - psi).sum::<f64>() / n;
    let var = points
        .iter()
        .map(|(x, psi)| {
            let d = x - psi - mean_shift;
            d * d
        })
        .sum::<f64>()
        / n;
    Ok(UniversalSeries { points, mean_shift, rms_scatter: libm::sqrt(var), alpha })
}

/// `x = ln eta - psi` for the exponent of `ln_re`; zero on the power law.
pub fn turbulence_shift_x(eta: f64, phi: f64, ln_re: f64) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Domain { what: "eta must be positive", value: eta });
    }
    if !(ln_re > 0.0) || !ln_re.is_finite() {
        return Err(Error::Domain { what: "ln Re must be positive", value: ln_re });
    }
    Ok(libm::log(eta) - psi_transform(phi, EXPONENT_NUMERATOR / ln_re)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftClass {
    Collapsed,
    /// Points under the bisectrix, the roughness or free-stream turbulence signature.
    ShiftedBelow,
    ShiftedAbove,
}

impl ShiftClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShiftClass::Collapsed => "collapsed",
            ShiftClass::ShiftedBelow => "shifted_below",
            ShiftClass::ShiftedAbove => "shifted_above",
        }
    }
}

pub fn classify_shift(series: &UniversalSeries, shift_tol: f64) -> ShiftClass {
    classify_mean_shift(series.mean_shift, shift_tol)
}

pub fn classify_mean_shift(mean_shift: f64, shift_tol: f64) -> ShiftClass {
    if mean_shift.abs() <= shift_tol {
        ShiftClass::Collapsed
    } else if mean_shift > shift_tol {
        ShiftClass::ShiftedBelow
    } else {
        ShiftClass::ShiftedAbove
    }
}
