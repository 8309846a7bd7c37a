//! Closed-form velocity laws: the Reynolds-number-dependent power law, the
//! classical logarithmic law, and the numerically computed envelope of the
//! power-law family.
//!
//! All logarithms are natural. The power law reads
//!
//! ```text
//! phi = (ln Re / sqrt(3) + 5/2) * eta^(3 / (2 ln Re))
//!     = ((sqrt(3) + 5 alpha) / (2 alpha)) * eta^alpha,   alpha = 3 / (2 ln Re)
//! ```

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linefit::fit_line;
use crate::minimize::minimize_bracketed;

/// Numerator `c` of the exponent `c / ln Re`.
pub const EXPONENT_NUMERATOR: f64 = 1.5;
/// Slope `C0` of the prefactor in `ln Re`.
pub const PREFACTOR_SLOPE: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)
/// Offset `C1` of the prefactor.
pub const PREFACTOR_OFFSET: f64 = 2.5;

pub(crate) const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Default `ln Re` bracket for envelope searches (Re from about 55 to 1e26).
pub const DEFAULT_ENVELOPE_BRACKET: (f64, f64) = (4.0, 60.0);
/// Default `ln eta` range for comparing the envelope with the log law.
pub const DEFAULT_ENVELOPE_RANGE: (f64, f64) = (5.0, 10.0);

const ENVELOPE_SCAN_POINTS: usize = 256;
const ENVELOPE_REL_TOL: f64 = 1e-8;

/// A position in wall units: `eta = u_* y / nu`, `phi = u / u_*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallUnits {
    pub eta: f64,
    pub phi: f64,
}

impl WallUnits {
    pub fn new(eta: f64, phi: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::Domain { what: "eta must be positive", value: eta });
        }
        if !(phi > 0.0) || !phi.is_finite() {
            return Err(Error::Domain { what: "phi must be positive", value: phi });
        }
        Ok(WallUnits { eta, phi })
    }

    pub fn ln_eta(&self) -> f64 {
        libm::log(self.eta)
    }

    pub fn ln_phi(&self) -> f64 {
        libm::log(self.phi)
    }
}

/// Parameters of one member of the power-law family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingLawParams {
    ln_re: f64,
    alpha: f64,
    prefactor: f64,
}

impl ScalingLawParams {
    pub fn from_ln_re(ln_re: f64) -> Result<Self> {
        Ok(ScalingLawParams { ln_re, alpha: alpha_of_ln_re(ln_re)?, prefactor: prefactor_of_ln_re(ln_re)? })
    }

    /// Inverse of [`alpha_of_ln_re`]: `ln Re = 3 / (2 alpha)`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain { what: "alpha must be positive", value: alpha });
        }
        Self::from_ln_re(EXPONENT_NUMERATOR / alpha)
    }

    pub fn ln_re(&self) -> f64 {
        self.ln_re
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn phi(&self, eta: f64) -> f64 {
        self.prefactor * libm::pow(eta, self.alpha)
    }
}

fn check_ln_re(ln_re: f64) -> Result<()> {
    if !(ln_re > 0.0) || !ln_re.is_finite() {
        return Err(Error::Domain { what: "ln Re must be positive", value: ln_re });
    }
    Ok(())
}

/// `alpha = 3 / (2 ln Re)`.
pub fn alpha_of_ln_re(ln_re: f64) -> Result<f64> {
    check_ln_re(ln_re)?;
    Ok(EXPONENT_NUMERATOR / ln_re)
}

/// `A = ln Re / sqrt(3) + 5/2`.
pub fn prefactor_of_ln_re(ln_re: f64) -> Result<f64> {
    check_ln_re(ln_re)?;
    Ok(ln_re / SQRT_3 + PREFACTOR_OFFSET)
}

/// `A(alpha) = (sqrt(3) + 5 alpha) / (2 alpha)`, the same prefactor written in `alpha`.
pub fn prefactor_of_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain { what: "alpha must be positive", value: alpha });
    }
    Ok((SQRT_3 + 5.0 * alpha) / (2.0 * alpha))
}

/// The power-law velocity `phi(eta; ln Re)`.
pub fn scaling_law_phi(eta: f64, ln_re: f64) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Domain { what: "eta must be positive", value: eta });
    }
    Ok(ScalingLawParams::from_ln_re(ln_re)?.phi(eta))
}

/// Power-law velocity as a function of `ln eta` and `ln Re`, without domain checks.
#[inline]
fn family_member(ln_eta: f64, ln_re: f64) -> f64 {
    (ln_re / SQRT_3 + PREFACTOR_OFFSET) * libm::exp(ln_eta * EXPONENT_NUMERATOR / ln_re)
}

/// Constants of the logarithmic law `phi = ln(eta) / kappa + C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLawParams {
    pub kappa: f64,
    pub c_offset: f64,
}

impl LogLawParams {
    /// The classical constants `kappa = 0.4`, `C = 5.1`.
    pub const CLASSICAL: LogLawParams = LogLawParams { kappa: 0.4, c_offset: 5.1 };

    pub fn new(kappa: f64, c_offset: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::Domain { what: "kappa must be positive", value: kappa });
        }
        Ok(LogLawParams { kappa, c_offset })
    }

    /// Least-squares line through `(ln eta, phi)` pairs, read as a log law.
    pub fn fit(ln_eta: &[f64], phi: &[f64]) -> Result<Self> {
        let line = fit_line(ln_eta, phi)?;
        if !(line.slope > 0.0) {
            return Err(Error::Domain { what: "log-law slope must be positive", value: line.slope });
        }
        Ok(LogLawParams { kappa: 1.0 / line.slope, c_offset: line.intercept })
    }

    pub fn phi_at_ln_eta(&self, ln_eta: f64) -> f64 {
        ln_eta / self.kappa + self.c_offset
    }
}

pub fn log_law_phi(eta: f64, params: LogLawParams) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Domain { what: "eta must be positive", value: eta });
    }
    Ok(params.phi_at_ln_eta(libm::log(eta)))
}

/// Point of the lower envelope of the power-law family at fixed `ln eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint {
    pub ln_eta: f64,
    pub phi_env: f64,
    /// `ln Re` of the family member that touches the envelope here.
    pub ln_re_touch: f64,
}

/// Minimum over `ln Re` in `bracket` of `phi(e^ln_eta; ln Re)`.
///
/// For fixed `eta > 1` the family diverges both as `ln Re -> 0+` and as
/// `ln Re -> inf`, so the touching member is the minimizer.
pub fn envelope_at(ln_eta: f64, bracket: (f64, f64)) -> Result<EnvelopePoint> {
    if !(ln_eta > 0.0) || !ln_eta.is_finite() {
        return Err(Error::Domain { what: "ln eta must be positive", value: ln_eta });
    }
    let (lo, hi) = bracket;
    if !(lo > 0.0 && lo < hi) {
        return Err(Error::Interval { lo, hi });
    }
    let m = minimize_bracketed(|ln_re| family_member(ln_eta, ln_re), lo, hi, ENVELOPE_SCAN_POINTS, ENVELOPE_REL_TOL)?;
    Ok(EnvelopePoint { ln_eta, phi_env: m.fx, ln_re_touch: m.x })
}

/// `n_points` equispaced envelope samples over `ln_eta_range`, endpoints included.
pub fn envelope_curve(ln_eta_range: (f64, f64), n_points: usize, bracket: (f64, f64)) -> Result<Vec<EnvelopePoint>> {
    let (lo, hi) = ln_eta_range;
    if !(lo < hi) {
        return Err(Error::Interval { lo, hi });
    }
    if n_points < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n_points });
    }
    let step = (hi - lo) / (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            let x = if i == n_points - 1 { hi } else { lo + step * i as f64 };
            envelope_at(x, bracket)
        })
        .collect()
}

/// Straight-line fit of the envelope in the `(ln eta, phi)` plane, returned as
/// effective log-law constants.
pub fn envelope_line_fit(ln_eta_range: (f64, f64), n_points: usize, bracket: (f64, f64)) -> Result<LogLawParams> {
    if n_points < 10 {
        return Err(Error::TooFewPoints { needed: 10, got: n_points });
    }
    let curve = envelope_curve(ln_eta_range, n_points, bracket)?;
    let xs: Vec<f64> = curve.iter().map(|p| p.ln_eta).collect();
    let ys: Vec<f64> = curve.iter().map(|p| p.phi_env).collect();
    LogLawParams::fit(&xs, &ys)
}
