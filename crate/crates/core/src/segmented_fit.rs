//! Power-law fits in doubly logarithmic coordinates and the two-segment
//! broken-line fit that separates regions (I) and (II).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linefit::{fit_line, LineFit};
use crate::scaling_model::WallUnits;

pub const DEFAULT_MIN_SEGMENT: usize = 3;
/// Default z-score for [`significant_break`].
pub const DEFAULT_BREAK_Z: f64 = 2.0;
/// Exponent differences at or below this are treated as rounding noise.
pub const EXPONENT_RESOLUTION: f64 = 1e-9;
/// Relative tolerance under which two split RSS values count as tied.
const RSS_TIE_REL: f64 = 1e-12;

/// `phi = prefactor * eta^exponent` fitted over `[eta_lo, eta_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawSegment {
    pub prefactor: f64,
    pub exponent: f64,
    pub eta_lo: f64,
    pub eta_hi: f64,
    pub n_points: usize,
    /// Residual sum of squares in `(ln eta, ln phi)`.
    pub rss: f64,
    pub stderr_exponent: f64,
}

impl PowerLawSegment {
    fn from_line(line: &LineFit, eta_lo: f64, eta_hi: f64) -> Self {
        PowerLawSegment {
            prefactor: libm::exp(line.intercept),
            exponent: line.slope,
            eta_lo,
            eta_hi,
            n_points: line.n,
            rss: line.rss,
            stderr_exponent: line.slope_stderr(),
        }
    }

    pub fn ln_prefactor(&self) -> f64 {
        libm::log(self.prefactor)
    }

    pub fn phi(&self, eta: f64) -> f64 {
        self.prefactor * libm::pow(eta, self.exponent)
    }

    /// Fitted `ln phi` at `ln eta`.
    pub fn ln_phi_at(&self, ln_eta: f64) -> f64 {
        self.ln_prefactor() + self.exponent * ln_eta
    }
}

/// Two power laws meeting at a split of the ordered samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrokenLineFit {
    pub region1: PowerLawSegment,
    pub region2: PowerLawSegment,
    /// Number of samples assigned to region (I); `points[..split_index]`.
    pub split_index: usize,
    pub break_ln_eta: f64,
    pub total_rss: f64,
}

fn log_coords(points: &[WallUnits]) -> (Vec<f64>, Vec<f64>) {
    points.iter().map(|p| (p.ln_eta(), p.ln_phi())).unzip()
}

fn check_positive(points: &[WallUnits]) -> Result<()> {
    for p in points {
        if !(p.eta > 0.0) || !(p.phi > 0.0) || !p.eta.is_finite() || !p.phi.is_finite() {
            return Err(Error::Domain { what: "power-law fits need positive eta and phi", value: p.eta.min(p.phi) });
        }
    }
    Ok(())
}

/// OLS of `ln phi` against `ln eta`.
pub fn fit_power_law(points: &[WallUnits]) -> Result<PowerLawSegment> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    check_positive(points)?;
    let (xs, ys) = log_coords(points);
    let line = fit_line(&xs, &ys)?;
    let (lo, hi) = eta_span(points);
    Ok(PowerLawSegment::from_line(&line, lo, hi))
}

fn eta_span(points: &[WallUnits]) -> (f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.eta), hi.max(p.eta)))
}

struct Candidate {
    split: usize,
    left: LineFit,
    right: LineFit,
    total_rss: f64,
    break_ln_eta: f64,
}

/// Exhaustive search over split indices `k` in `[min_seg, n - min_seg]`,
/// fitting a power law on each side and keeping the smallest total RSS.
///
/// Near-equal RSS values are resolved in favour of the break closest to the
/// middle of the `ln eta` span, then the smaller split.
pub fn fit_broken_line(points: &[WallUnits], min_seg: usize) -> Result<BrokenLineFit> {
    let min_seg = min_seg.max(3);
    let n = points.len();
    if n < 2 * min_seg {
        return Err(Error::TooFewPoints { needed: 2 * min_seg, got: n });
    }
    check_positive(points)?;
    let (xs, ys) = log_coords(points);
    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let x_max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let middle = 0.5 * (x_min + x_max);

    let mut best: Option<Candidate> = None;
    for split in min_seg..=n - min_seg {
        let left = fit_line(&xs[..split], &ys[..split])?;
        let right = fit_line(&xs[split..], &ys[split..])?;
        let total_rss = left.rss + right.rss;
        let fallback = 0.5 * (xs[split - 1] + xs[split]);
        let break_ln_eta = match intersection(&left, &right) {
            Some(x) if x >= x_min && x <= x_max => x,
            _ => fallback,
        };
        let cand = Candidate { split, left, right, total_rss, break_ln_eta };
        best = Some(match best {
            None => cand,
            Some(b) => {
                if prefer(&cand, &b, middle) {
                    cand
                } else {
                    b
                }
            }
        });
    }
    let b = best.expect("at least one admissible split");
    let (lo1, hi1) = eta_span(&points[..b.split]);
    let (lo2, hi2) = eta_span(&points[b.split..]);
    Ok(BrokenLineFit {
        region1: PowerLawSegment::from_line(&b.left, lo1, hi1),
        region2: PowerLawSegment::from_line(&b.right, lo2, hi2),
        split_index: b.split,
        break_ln_eta: b.break_ln_eta,
        total_rss: b.total_rss,
    })
}

fn prefer(cand: &Candidate, incumbent: &Candidate, middle: f64) -> bool {
    let scale = cand.total_rss.max(incumbent.total_rss);
    if (cand.total_rss - incumbent.total_rss).abs() <= RSS_TIE_REL * scale {
        let dc = (cand.break_ln_eta - middle).abs();
        let di = (incumbent.break_ln_eta - middle).abs();
        return dc < di;
    }
    cand.total_rss < incumbent.total_rss
}

fn intersection(a: &LineFit, b: &LineFit) -> Option<f64> {
    let ds = a.slope - b.slope;
    if ds == 0.0 {
        return None;
    }
    let x = (b.intercept - a.intercept) / ds;
    x.is_finite().then_some(x)
}

/// Whether the two exponents differ by more than `z` combined standard errors.
///
/// Differences at or below [`EXPONENT_RESOLUTION`] never count, so noiseless
/// data from a single power law does not report a spurious break.
pub fn significant_break(fit: &BrokenLineFit, z: f64) -> bool {
    let gap = (fit.region1.exponent - fit.region2.exponent).abs();
    let s1 = fit.region1.stderr_exponent;
    let s2 = fit.region2.stderr_exponent;
    gap > EXPONENT_RESOLUTION && gap > z * libm::sqrt(s1 * s1 + s2 * s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power_law(k: f64, p: f64, ln_etas: impl Iterator<Item = f64>) -> Vec<WallUnits> {
        ln_etas.map(|x| WallUnits { eta: libm::exp(x), phi: k * libm::exp(p * x) }).collect()
    }

    #[test]
    fn exact_power_law_recovered() {
        let pts = power_law(9.10, 0.129, (0..10).map(|i| 3.5 + 0.4 * i as f64));
        let seg = fit_power_law(&pts).unwrap();
        assert!((seg.prefactor - 9.10).abs() < 1e-10);
        assert!((seg.exponent - 0.129).abs() < 1e-10);
        assert!(seg.rss < 1e-20);
        assert_eq!(seg.n_points, 10);
        assert!(seg.eta_lo < seg.eta_hi);
    }

    #[test]
    fn collinear_triplet() {
        let a = WallUnits { eta: 10.0, phi: 5.0 };
        let c = WallUnits { eta: 1000.0, phi: 20.0 };
        let slope = (20.0f64.ln() - 5.0f64.ln()) / (1000.0f64.ln() - 10.0f64.ln());
        let b = WallUnits { eta: 100.0, phi: 10.0 };
        let seg = fit_power_law(&[a, b, c]).unwrap();
        assert!((seg.exponent - slope).abs() < 1e-13);
        assert!(seg.rss < 1e-28);
    }

    #[test]
    fn errors() {
        let pts = power_law(8.0, 0.1, [1.0, 2.0].into_iter());
        assert_eq!(fit_power_law(&pts), Err(Error::TooFewPoints { needed: 3, got: 2 }));
        let same =
            [WallUnits { eta: 5.0, phi: 1.0 }, WallUnits { eta: 5.0, phi: 2.0 }, WallUnits { eta: 5.0, phi: 3.0 }];
        assert_eq!(fit_power_law(&same), Err(Error::Degenerate));
        let pts = power_law(8.0, 0.1, (0..5).map(|i| i as f64));
        assert!(matches!(fit_broken_line(&pts, 3), Err(Error::TooFewPoints { needed: 6, got: 5 })));
    }

    #[test]
    fn two_segment_exact_recovery() {
        // region I from A = 8.66, alpha = 0.140; region II beta = 0.20, continuous at ln eta = 6
        let (a, alpha, beta, brk) = (8.66, 0.140, 0.20, 6.0);
        let b = a * libm::exp(brk * (alpha - beta));
        let mut pts = power_law(a, alpha, (0..15).map(|i| 3.55 + 0.17 * i as f64));
        pts.extend(power_law(b, beta, (0..15).map(|i| 6.05 + 0.17 * i as f64)));
        let fit = fit_broken_line(&pts, 3).unwrap();
        assert_eq!(fit.split_index, 15);
        assert!((fit.region1.exponent - alpha).abs() < 1e-9);
        assert!((fit.region2.exponent - beta).abs() < 1e-9);
        assert!((fit.region1.prefactor - a).abs() < 1e-9);
        assert!((fit.break_ln_eta - brk).abs() < 1e-8);
        assert!(significant_break(&fit, DEFAULT_BREAK_Z));
        assert_eq!(fit.total_rss, fit.region1.rss + fit.region2.rss);
    }

    #[test]
    fn single_power_law_has_no_significant_break() {
        let pts = power_law(8.0, 0.15, (0..30).map(|i| 3.5 + 0.2 * i as f64));
        let fit = fit_broken_line(&pts, 3).unwrap();
        let gap = (fit.region1.exponent - fit.region2.exponent).abs();
        assert!(
            gap <= 2.0 * fit.region1.stderr_exponent.max(fit.region2.stderr_exponent) || gap <= EXPONENT_RESOLUTION
        );
        assert!(!significant_break(&fit, DEFAULT_BREAK_Z));
    }

    fn fake_fit(p1: f64, s1: f64, p2: f64, s2: f64) -> BrokenLineFit {
        let seg = |p, s| PowerLawSegment {
            prefactor: 1.0,
            exponent: p,
            eta_lo: 1.0,
            eta_hi: 2.0,
            n_points: 3,
            rss: 0.0,
            stderr_exponent: s,
        };
        BrokenLineFit { region1: seg(p1, s1), region2: seg(p2, s2), split_index: 3, break_ln_eta: 0.5, total_rss: 0.0 }
    }

    #[test]
    fn significance_arithmetic() {
        assert!(significant_break(&fake_fit(0.140, 0.003, 0.20, 0.005), 2.0));
        assert!(!significant_break(&fake_fit(0.15, 0.01, 0.15, 0.01), 2.0));
        // gap 1.25 equals 2 * sqrt(0.375^2 + 0.5^2) exactly in binary
        assert!(!significant_break(&fake_fit(1.0, 0.375, 2.25, 0.5), 2.0));
        assert!(significant_break(&fake_fit(1.0, 0.375, 2.2501, 0.5), 2.0));
    }
}
