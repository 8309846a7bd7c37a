//! Velocity profiles in wall units and the sample selection that isolates the
//! intermediate regions.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result, ValidationError};
use crate::scaling_model::WallUnits;

/// Default cutoff `lg eta` at the sublayer edge.
pub const DEFAULT_LG_ETA_MIN: f64 = 1.5;
/// Default relative tolerance for the free-stream plateau.
pub const DEFAULT_PLATEAU_TOL: f64 = 0.002;
pub const MIN_PROFILE_SAMPLES: usize = 4;

/// Flow metadata attached to a measured profile.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProfileMetadata {
    pub label: String,
    /// Momentum-thickness Reynolds number `U theta / nu`.
    pub re_theta: Option<f64>,
    /// Free-stream turbulence intensity `u' / U`.
    pub turbulence_level: Option<f64>,
    /// Free-stream velocity `U` in m/s.
    pub free_stream_velocity: Option<f64>,
    /// Kinematic viscosity in m^2/s.
    pub nu: Option<f64>,
    /// Friction velocity in m/s.
    pub u_star: Option<f64>,
}

impl ProfileMetadata {
    pub fn labelled(label: impl Into<String>) -> Self {
        ProfileMetadata { label: label.into(), ..Default::default() }
    }

    pub fn validate(&self) -> core::result::Result<(), ValidationError> {
        let fields = [
            ("re_theta", self.re_theta),
            ("turbulence_level", self.turbulence_level),
            ("U", self.free_stream_velocity),
            ("nu", self.nu),
            ("u_star", self.u_star),
        ];
        for (field, value) in fields {
            if let Some(v) = value {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(ValidationError::Metadata { field, value: v });
                }
            }
        }
        Ok(())
    }
}

/// Samples strictly increasing in `eta`, at least four of them, all finite
/// and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityProfile {
    samples: Vec<WallUnits>,
    metadata: ProfileMetadata,
}

impl VelocityProfile {
    pub fn new(samples: Vec<WallUnits>, metadata: ProfileMetadata) -> Result<Self> {
        validate_samples(&samples)?;
        metadata.validate()?;
        Ok(VelocityProfile { samples, metadata })
    }

    /// Builds a profile from `(eta, phi)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], metadata: ProfileMetadata) -> Result<Self> {
        let samples = pairs.iter().map(|&(eta, phi)| WallUnits { eta, phi }).collect();
        Self::new(samples, metadata)
    }

    pub fn samples(&self) -> &[WallUnits] {
        &self.samples
    }

    pub fn metadata(&self) -> &ProfileMetadata {
        &self.metadata
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_parts(self) -> (Vec<WallUnits>, ProfileMetadata) {
        (self.samples, self.metadata)
    }
}

fn validate_samples(samples: &[WallUnits]) -> core::result::Result<(), ValidationError> {
    for (i, s) in samples.iter().enumerate() {
        if !s.eta.is_finite() || !s.phi.is_finite() {
            return Err(ValidationError::NonFinite { index: i });
        }
        if !(s.eta > 0.0 && s.phi > 0.0) {
            return Err(ValidationError::NonPositive { index: i });
        }
        if i > 0 {
            let prev = samples[i - 1].eta;
            if s.eta == prev {
                return Err(ValidationError::DuplicateEta { index: i });
            }
            if s.eta < prev {
                return Err(ValidationError::NotIncreasing { index: i });
            }
        }
    }
    if samples.len() < MIN_PROFILE_SAMPLES {
        return Err(ValidationError::TooFewSamples { got: samples.len() });
    }
    Ok(())
}

/// Converts a dimensional measurement `(y, u)` to wall units.
pub fn normalize_raw(y: f64, u: f64, u_star: f64, nu: f64) -> Result<WallUnits> {
    for (what, v) in [
        ("y must be positive", y),
        ("u must be positive", u),
        ("u_star must be positive", u_star),
        ("nu must be positive", nu),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain { what, value: v });
        }
    }
    Ok(WallUnits { eta: u_star * y / nu, phi: u / u_star })
}

/// Inverse of [`normalize_raw`]: returns `(y, u)`.
pub fn denormalize(w: WallUnits, u_star: f64, nu: f64) -> (f64, f64) {
    (w.eta * nu / u_star, w.phi * u_star)
}

/// Options for [`select_intermediate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    /// Samples with `lg eta <= lg_eta_min` belong to the viscous sublayer.
    pub lg_eta_min: f64,
    /// Relative tolerance (fraction of `phi_max`) for the trailing plateau.
    /// `None` disables plateau removal.
    pub plateau_tol: Option<f64>,
}

impl Default for Selection {
    fn default() -> Self {
        Selection { lg_eta_min: DEFAULT_LG_ETA_MIN, plateau_tol: Some(DEFAULT_PLATEAU_TOL) }
    }
}

/// Index range `[start, end)` kept by [`select_intermediate`].
pub fn intermediate_range(samples: &[WallUnits], sel: Selection) -> (usize, usize) {
    let start = samples.iter().position(|s| libm::log10(s.eta) > sel.lg_eta_min).unwrap_or(samples.len());
    let end = match sel.plateau_tol {
        Some(tol) => start + plateau_start(&samples[start..], tol),
        None => samples.len(),
    };
    (start, end)
}

/// Start of the trailing free-stream plateau: the maximal suffix whose samples
/// each sit within `tol * phi_max` of the running maximum and are reached by a
/// nonpositive step in `(ln eta, ln phi)`.
fn plateau_start(samples: &[WallUnits], tol: f64) -> usize {
    let Some(phi_max) = samples.iter().map(|s| s.phi).reduce(f64::max) else {
        return 0;
    };
    let band = tol * phi_max;
    let mut running_max = Vec::with_capacity(samples.len());
    let mut m = f64::NEG_INFINITY;
    for s in samples {
        m = m.max(s.phi);
        running_max.push(m);
    }
    let mut start = samples.len();
    while start > 1 {
        let i = start - 1;
        let step_nonpositive = samples[i].ln_phi() - samples[i - 1].ln_phi() <= 0.0;
        let near_max = running_max[i] - samples[i].phi <= band;
        if !(step_nonpositive && near_max) {
            break;
        }
        start = i;
    }
    start
}

/// Drops the viscous sublayer and the trailing free-stream plateau.
pub fn select_intermediate(profile: &VelocityProfile, sel: Selection) -> Result<VelocityProfile> {
    let (start, end) = intermediate_range(profile.samples(), sel);
    let kept = end.saturating_sub(start);
    if kept < MIN_PROFILE_SAMPLES {
        return Err(Error::EmptyResult { survivors: kept });
    }
    Ok(VelocityProfile { samples: profile.samples[start..end].to_vec(), metadata: profile.metadata.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn profile(pairs: &[(f64, f64)]) -> VelocityProfile {
        VelocityProfile::from_pairs(pairs, ProfileMetadata::labelled("t")).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let (u_star, nu) = (0.05, 1.5e-5);
        let w = normalize_raw(nu / u_star, u_star, u_star, nu).unwrap();
        assert!((w.eta - 1.0).abs() < 1e-15 && (w.phi - 1.0).abs() < 1e-15);

        let w = normalize_raw(0.021, 1.0, u_star, nu).unwrap();
        assert!((w.eta - 70.0).abs() < 1e-9);

        let w2 = normalize_raw(0.021, 1.0, 2.0 * u_star, nu).unwrap();
        assert!((w2.eta - 2.0 * w.eta).abs() < 1e-12);
        assert!((w2.phi - 0.5 * w.phi).abs() < 1e-12);

        assert!(normalize_raw(0.0, 1.0, u_star, nu).is_err());
        assert!(normalize_raw(0.1, 1.0, -1.0, nu).is_err());
    }

    #[test]
    fn denormalize_inverts() {
        let w = WallUnits { eta: 123.456, phi: 17.5 };
        let (y, u) = denormalize(w, 0.043, 1.46e-5);
        let back = normalize_raw(y, u, 0.043, 1.46e-5).unwrap();
        assert!((back.eta - w.eta).abs() <= 1e-12 * w.eta);
        assert!((back.phi - w.phi).abs() <= 1e-12 * w.phi);
    }

    #[test]
    fn validation_errors() {
        let meta = ProfileMetadata::default();
        let err = VelocityProfile::from_pairs(&[(1.0, 1.0), (10.0, 8.0), (5.0, 9.0), (20.0, 10.0)], meta.clone());
        assert_eq!(err, Err(Error::Validation(ValidationError::NotIncreasing { index: 2 })));
        let err = VelocityProfile::from_pairs(&[(1.0, 1.0), (1.0, 8.0), (5.0, 9.0), (20.0, 10.0)], meta.clone());
        assert_eq!(err, Err(Error::Validation(ValidationError::DuplicateEta { index: 1 })));
        let err = VelocityProfile::from_pairs(&[(1.0, 1.0), (2.0, 8.0), (5.0, 9.0)], meta.clone());
        assert_eq!(err, Err(Error::Validation(ValidationError::TooFewSamples { got: 3 })));
        let err = VelocityProfile::from_pairs(&[(1.0, f64::NAN), (2.0, 8.0), (5.0, 9.0), (6.0, 9.5)], meta.clone());
        assert_eq!(err, Err(Error::Validation(ValidationError::NonFinite { index: 0 })));
        let bad_meta = ProfileMetadata { re_theta: Some(-1.0), ..meta };
        assert!(VelocityProfile::from_pairs(&[(1.0, 1.0), (2.0, 8.0), (5.0, 9.0), (6.0, 9.5)], bad_meta).is_err());
    }

    #[test]
    fn sublayer_cutoff_at_lg_eta_1_5() {
        let lg = [1.4, 1.5, 1.6, 1.8, 2.0, 2.2];
        let pairs: Vec<(f64, f64)> = lg.iter().map(|&l| (libm::pow(10.0, l), 5.0 + l)).collect();
        let sel = select_intermediate(&profile(&pairs), Selection::default()).unwrap();
        assert_eq!(sel.len(), 4);
        assert!((libm::log10(sel.samples()[0].eta) - 1.6).abs() < 1e-12);
    }

    #[test]
    fn monotone_profile_keeps_everything() {
        let pairs: Vec<(f64, f64)> = (0..10).map(|i| (100.0 * (i + 1) as f64, 10.0 + i as f64)).collect();
        let sel = select_intermediate(&profile(&pairs), Selection::default()).unwrap();
        assert_eq!(sel.len(), 10);
    }

    #[test]
    fn constant_tail_is_removed() {
        let mut pairs: Vec<(f64, f64)> = (0..10).map(|i| (100.0 * (i + 1) as f64, 10.0 + i as f64)).collect();
        for i in 10..15 {
            pairs.push((100.0 * (i + 1) as f64, 19.0));
        }
        let p = profile(&pairs);
        let sel = select_intermediate(&p, Selection::default()).unwrap();
        assert_eq!(sel.len(), 10);
        let off = Selection { plateau_tol: None, ..Selection::default() };
        assert_eq!(select_intermediate(&p, off).unwrap().len(), 15);
    }

    #[test]
    fn too_few_survivors() {
        let pairs = vec![(2.0, 1.0), (5.0, 3.0), (10.0, 5.0), (20.0, 6.0), (40.0, 7.0)];
        assert_eq!(
            select_intermediate(&profile(&pairs), Selection::default()),
            Err(Error::EmptyResult { survivors: 1 })
        );
    }
}
