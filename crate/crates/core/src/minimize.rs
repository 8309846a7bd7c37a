//! Derivative-free scalar minimization on a bracket.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of a one-dimensional minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
}

/// Golden-section search on `[lo, hi]` until the bracket width drops below
/// `rel_tol * |x|`. Assumes `f` is unimodal on the interval.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Minimum {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // 200 iterations shrink any finite bracket far below f64 resolution.
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a) <= rel_tol * libm::fabs(mid) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        Minimum { x: c, fx: fc }
    } else {
        Minimum { x: d, fx: fd }
    }
}

/// Coarse scan of `scan_points` equispaced abscissae, then golden-section
/// refinement between the neighbours of the best scan point.
///
/// Fails with [`Error::Bracket`] when the best scan point is an endpoint.
pub fn minimize_bracketed<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    scan_points: usize,
    rel_tol: f64,
) -> Result<Minimum> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Interval { lo, hi });
    }
    let scan_points = scan_points.max(3);
    let step = (hi - lo) / (scan_points - 1) as f64;
    let at = |i: usize| if i == scan_points - 1 { hi } else { lo + step * i as f64 };

    let mut best = 0;
    let mut best_f = f64::INFINITY;
    for i in 0..scan_points {
        let v = f(at(i));
        if v < best_f {
            best_f = v;
            best = i;
        }
    }
    if best == 0 || best == scan_points - 1 {
        return Err(Error::Bracket { lo, hi, at: at(best) });
    }
    let m = golden_section(&f, at(best - 1), at(best + 1), rel_tol);
    Ok(if m.fx <= best_f { m } else { Minimum { x: at(best), fx: best_f } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_vertex() {
        let m = minimize_bracketed(|x| (x - 2.5) * (x - 2.5) + 1.0, 0.0, 10.0, 256, 1e-10).unwrap();
        assert!((m.x - 2.5).abs() < 1e-7);
        assert!((m.fx - 1.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_minimum_is_bracket_error() {
        let err = minimize_bracketed(|x| x, 1.0, 2.0, 256, 1e-8).unwrap_err();
        assert!(matches!(err, Error::Bracket { at, .. } if at == 1.0));
        let err = minimize_bracketed(|x| -x, 1.0, 2.0, 256, 1e-8).unwrap_err();
        assert!(matches!(err, Error::Bracket { at, .. } if at == 2.0));
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(matches!(minimize_bracketed(|x| x * x, 1.0, -1.0, 16, 1e-8), Err(Error::Interval { .. })));
    }
}
