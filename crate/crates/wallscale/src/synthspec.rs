//! `key=value` description of a synthetic profile.
//!
//! Keys: `ln_re`, `prefactor` and `alpha` (both or neither; override the
//! scaling-law region I), `beta`, `break_ln_eta`, `ln_eta_min`,
//! `ln_eta_max`, `n_points`, `noise_sigma`, `shift`, `plateau_points`,
//! `seed`, `label`, `re_theta`, `turbulence_level`. Unset keys take the
//! [`SynthSpec::default`] values.

use thiserror::Error;
use wallscale_core::{ExplicitLaw, SynthSpec};

#[derive(Debug, Error, PartialEq)]
#[error("spec line {line}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub message: String,
}

pub fn parse_synth_spec(text: &str) -> Result<SynthSpec, SpecError> {
    let mut spec = SynthSpec::default();
    let mut prefactor = None;
    let mut alpha = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| SpecError { line: line_no, message };
        if let Some(rest) = line.strip_prefix("label=") {
            spec.label = rest.trim().to_string();
            continue;
        }
        for pair in line.split(',') {
            let (key, value) = pair.split_once('=').ok_or_else(|| err(format!("expected key=value, got {pair:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let float = || value.parse::<f64>().map_err(|_| err(format!("{key}: not a number: {value:?}")));
            let int = || value.parse::<u64>().map_err(|_| err(format!("{key}: not an integer: {value:?}")));
            match key {
                "ln_re" => spec.ln_re = float()?,
                "prefactor" => prefactor = Some(float()?),
                "alpha" => alpha = Some(float()?),
                "beta" => spec.beta = float()?,
                "break_ln_eta" => spec.break_ln_eta = float()?,
                "ln_eta_min" => spec.ln_eta_range.0 = float()?,
                "ln_eta_max" => spec.ln_eta_range.1 = float()?,
                "n_points" => spec.n_points = int()? as usize,
                "noise_sigma" => spec.noise_sigma = float()?,
                "shift" => spec.shift = float()?,
                "plateau_points" => spec.plateau_points = int()? as usize,
                "seed" => spec.seed = int()?,
                "re_theta" => spec.re_theta = Some(float()?),
                "turbulence_level" => spec.turbulence_level = Some(float()?),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
    }
    spec.region1_override = match (prefactor, alpha) {
        (Some(prefactor), Some(alpha)) => Some(ExplicitLaw { prefactor, alpha }),
        (None, None) => None,
        _ => return Err(SpecError { line: 0, message: "prefactor and alpha must be given together".into() }),
    };
    Ok(spec)
}

/// Inverse of [`parse_synth_spec`].
pub fn write_synth_spec(spec: &SynthSpec) -> String {
    let mut out = format!("label={}\n", spec.label);
    out += &format!("ln_re={:?}\n", spec.ln_re);
    if let Some(law) = spec.region1_override {
        out += &format!("prefactor={:?}\nalpha={:?}\n", law.prefactor, law.alpha);
    }
    out += &format!(
        "beta={:?}\nbreak_ln_eta={:?}\nln_eta_min={:?}\nln_eta_max={:?}\nn_points={}\nnoise_sigma={:?}\nshift={:?}\nplateau_points={}\nseed={}\n",
        spec.beta,
        spec.break_ln_eta,
        spec.ln_eta_range.0,
        spec.ln_eta_range.1,
        spec.n_points,
        spec.noise_sigma,
        spec.shift,
        spec.plateau_points,
        spec.seed
    );
    if let Some(v) = spec.re_theta {
        out += &format!("re_theta={v:?}\n");
    }
    if let Some(v) = spec.turbulence_level {
        out += &format!("turbulence_level={v:?}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_defaults() {
        let spec =
            parse_synth_spec("# Fig.8a-like\nln_re=10.69, beta=0.2\nnoise_sigma=0.01\nseed=7\nlabel=fig8a\n").unwrap();
        assert_eq!(spec.ln_re, 10.69);
        assert_eq!(spec.beta, 0.2);
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.label, "fig8a");
        assert_eq!(spec.n_points, SynthSpec::default().n_points);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_synth_spec("ln_re=abc").unwrap_err().line, 1);
        assert!(parse_synth_spec("\nfoo=1").is_err());
        assert!(parse_synth_spec("prefactor=8.0").is_err());
    }

    #[test]
    fn write_parse_round_trip() {
        let spec = SynthSpec {
            region1_override: Some(ExplicitLaw { prefactor: 8.66, alpha: 0.14 }),
            re_theta: Some(4680.0),
            turbulence_level: Some(0.0003),
            noise_sigma: 0.01,
            plateau_points: 3,
            label: "Fig.8a".into(),
            ..SynthSpec::default()
        };
        assert_eq!(parse_synth_spec(&write_synth_spec(&spec)).unwrap(), spec);
    }
}
