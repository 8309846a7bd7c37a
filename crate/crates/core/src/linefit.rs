//! Ordinary least squares for a straight line `y = intercept + slope * x`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Residual sum of squares.
    pub rss: f64,
    pub n: usize,
    /// Sum of squared deviations of `x` about its mean.
    pub sxx: f64,
    pub x_mean: f64,
}

impl LineFit {
    /// Standard error of the slope with `n - 2` degrees of freedom.
    /// Infinite when `n <= 2`.
    pub fn slope_stderr(&self) -> f64 {
        if self.n <= 2 {
            return f64::INFINITY;
        }
        libm::sqrt(self.rss / (self.n - 2) as f64 / self.sxx)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Two-pass (centered) normal-equation solution.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - x_mean;
        sxx += dx * dx;
        sxy += dx * (y - y_mean);
    }
    if !(sxx > 0.0) {
        return Err(Error::Degenerate);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let rss = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - y_mean - slope * (x - x_mean);
            r * r
        })
        .sum();
    Ok(LineFit { slope, intercept, rss, n, sxx, x_mean })
}
