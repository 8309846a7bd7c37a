//! Synthetic velocity profiles built from the two intermediate-region laws,
//! used as ground truth for the fitting and diagnostic code.
//!
//! Samples are equispaced in `ln eta`. Below the break `phi = A eta^alpha`
//! (the Reynolds-number-dependent law unless overridden); from the break on
//! `phi = B eta^beta` with `B` chosen for continuity. Post-processing, in
//! order: a region-(I) factor `exp(-alpha * shift)` that lowers `psi` by
//! `shift`; multiplicative noise `exp(N(0, noise_sigma))`; trailing plateau.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with one
//! `StandardNormal` draw per sample in order of increasing `eta`. No draw is
//! made when `noise_sigma == 0`.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::profile::{ProfileMetadata, VelocityProfile};
use crate::scaling_model::{alpha_of_ln_re, prefactor_of_ln_re, WallUnits};

/// Region-(I) law given directly instead of through `ln Re`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplicitLaw {
    pub prefactor: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// Sets region-(I) `A` and `alpha` through the scaling law.
    pub ln_re: f64,
    /// Replaces the scaling-law `A` and `alpha` when set.
    pub region1_override: Option<ExplicitLaw>,
    pub beta: f64,
    pub break_ln_eta: f64,
    pub ln_eta_range: (f64, f64),
    pub n_points: usize,
    pub noise_sigma: f64,
    /// Downward displacement of region (I) in `psi`.
    pub shift: f64,
    pub plateau_points: usize,
    pub seed: u64,
    pub label: String,
    pub re_theta: Option<f64>,
    pub turbulence_level: Option<f64>,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            ln_re: 11.0,
            region1_override: None,
            beta: 0.2,
            break_ln_eta: 7.0,
            ln_eta_range: (3.5, 10.5),
            n_points: 40,
            noise_sigma: 0.0,
            shift: 0.0,
            plateau_points: 0,
            seed: 0,
            label: String::from("synthetic"),
            re_theta: None,
            turbulence_level: None,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.ln_re > 0.0) || !self.ln_re.is_finite() {
            return Err(Error::InvalidSpec("ln_re must be positive"));
        }
        if let Some(law) = self.region1_override {
            if !(law.prefactor > 0.0 && law.alpha > 0.0) || !law.prefactor.is_finite() || !law.alpha.is_finite() {
                return Err(Error::InvalidSpec("explicit region-I prefactor and alpha must be positive"));
            }
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidSpec("beta must be finite"));
        }
        if self.n_points < 8 {
            return Err(Error::InvalidSpec("n_points must be at least 8"));
        }
        if !(self.noise_sigma >= 0.0) || !self.noise_sigma.is_finite() {
            return Err(Error::InvalidSpec("noise_sigma must be nonnegative"));
        }
        let (lo, hi) = self.ln_eta_range;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidSpec("ln_eta_range must be a finite increasing interval"));
        }
        if !(self.break_ln_eta > lo && self.break_ln_eta < hi) {
            return Err(Error::InvalidSpec("break_ln_eta must lie inside ln_eta_range"));
        }
        if !self.shift.is_finite() {
            return Err(Error::InvalidSpec("shift must be finite"));
        }
        if self.plateau_points >= self.n_points {
            return Err(Error::InvalidSpec("plateau_points must be smaller than n_points"));
        }
        Ok(())
    }

    /// Region-(I) `(A, alpha)`.
    pub fn region1_law(&self) -> Result<ExplicitLaw> {
        match self.region1_override {
            Some(law) => Ok(law),
            None => Ok(ExplicitLaw { prefactor: prefactor_of_ln_re(self.ln_re)?, alpha: alpha_of_ln_re(self.ln_re)? }),
        }
    }

    /// Region-(II) prefactor `B = A exp(break (alpha - beta))`.
    pub fn region2_prefactor(&self) -> Result<f64> {
        let law = self.region1_law()?;
        Ok(law.prefactor * libm::exp(self.break_ln_eta * (law.alpha - self.beta)))
    }

    /// `ln eta` of sample `i`.
    pub fn ln_eta_at(&self, i: usize) -> f64 {
        let (lo, hi) = self.ln_eta_range;
        if i + 1 == self.n_points {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (self.n_points - 1) as f64
        }
    }

    /// Number of samples below the break, i.e. the true split index.
    pub fn region1_count(&self) -> usize {
        (0..self.n_points).take_while(|&i| self.ln_eta_at(i) < self.break_ln_eta).count()
    }
}

pub fn generate(spec: &SynthSpec) -> Result<VelocityProfile> {
    spec.validate()?;
    let law = spec.region1_law()?;
    let b = spec.region2_prefactor()?;
    let shift_factor = libm::exp(-law.alpha * spec.shift);

    let mut samples: Vec<WallUnits> = (0..spec.n_points)
        .map(|i| {
            let x = spec.ln_eta_at(i);
            let phi = if x < spec.break_ln_eta {
                law.prefactor * libm::exp(law.alpha * x) * shift_factor
            } else {
                b * libm::exp(spec.beta * x)
            };
            WallUnits { eta: libm::exp(x), phi }
        })
        .collect();

    if spec.noise_sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for s in samples.iter_mut() {
            let z: f64 = StandardNormal.sample(&mut rng);
            s.phi *= libm::exp(spec.noise_sigma * z);
        }
    }

    if spec.plateau_points > 0 {
        let last = spec.n_points - spec.plateau_points - 1;
        let pinned = samples[last].phi;
        for s in &mut samples[last + 1..] {
            s.phi = pinned;
        }
    }

    let metadata = ProfileMetadata {
        label: spec.label.clone(),
        re_theta: spec.re_theta,
        turbulence_level: spec.turbulence_level,
        ..ProfileMetadata::default()
    };
    VelocityProfile::new(samples, metadata)
}

/// `n_realizations` profiles with seeds `seed, seed + 1, ...`.
pub fn generate_ensemble(spec: &SynthSpec, n_realizations: usize) -> Result<Vec<VelocityProfile>> {
    if n_realizations == 0 {
        return Err(Error::InvalidSpec("n_realizations must be at least 1"));
    }
    (0..n_realizations as u64)
        .map(|k| {
            let member = SynthSpec { seed: spec.seed.wrapping_add(k), ..spec.clone() };
            generate(&member)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_region_one_is_the_scaling_law() {
        let spec = SynthSpec { ln_re: 11.0, ..SynthSpec::default() };
        let p = generate(&spec).unwrap();
        let a = 11.0 / 3f64.sqrt() + 2.5;
        let alpha = 3.0 / 22.0;
        for s in &p.samples()[..spec.region1_count()] {
            let expected = a * s.eta.powf(alpha);
            assert!((s.phi - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn continuity_at_break() {
        let spec = SynthSpec::default();
        let law = spec.region1_law().unwrap();
        let b = spec.region2_prefactor().unwrap();
        let left = law.prefactor * libm::exp(law.alpha * spec.break_ln_eta);
        let right = b * libm::exp(spec.beta * spec.break_ln_eta);
        assert!((left - right).abs() / left < 1e-12);
    }

    #[test]
    fn plateau_pins_trailing_samples() {
        let spec = SynthSpec { plateau_points: 5, noise_sigma: 0.01, seed: 7, ..SynthSpec::default() };
        let p = generate(&spec).unwrap();
        let s = p.samples();
        let pinned = s[spec.n_points - 6].phi;
        assert!(s[spec.n_points - 5..].iter().all(|w| w.phi == pinned));
    }

    #[test]
    fn seeds_control_noise() {
        let spec = SynthSpec { noise_sigma: 0.01, seed: 3, ..SynthSpec::default() };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = SynthSpec { seed: 4, ..spec.clone() };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
        // without noise the seed is irrelevant
        let a = SynthSpec { seed: 1, ..SynthSpec::default() };
        let b = SynthSpec { seed: 2, ..SynthSpec::default() };
        assert_eq!(generate(&a).unwrap(), generate(&b).unwrap());
    }

    #[test]
    fn ensemble_seeds() {
        let spec = SynthSpec { noise_sigma: 0.01, seed: 10, ..SynthSpec::default() };
        let one = generate_ensemble(&spec, 1).unwrap();
        assert_eq!(one[0], generate(&spec).unwrap());
        let many = generate_ensemble(&spec, 3).unwrap();
        assert_eq!(many[2], generate(&SynthSpec { seed: 12, ..spec.clone() }).unwrap());
        assert_eq!(many, generate_ensemble(&spec, 3).unwrap());
        assert!(generate_ensemble(&spec, 0).is_err());
    }

    #[test]
    fn spec_validation() {
        let bad = [
            SynthSpec { ln_re: 0.0, ..SynthSpec::default() },
            SynthSpec { n_points: 7, ..SynthSpec::default() },
            SynthSpec { noise_sigma: -0.1, ..SynthSpec::default() },
            SynthSpec { break_ln_eta: 11.0, ..SynthSpec::default() },
            SynthSpec { ln_eta_range: (5.0, 5.0), ..SynthSpec::default() },
            SynthSpec { plateau_points: 40, ..SynthSpec::default() },
        ];
        for spec in &bad {
            assert!(matches!(generate(spec), Err(Error::InvalidSpec(_))), "{spec:?}");
        }
    }
}
