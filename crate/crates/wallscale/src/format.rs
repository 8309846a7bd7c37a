//! Text formats for velocity profiles.
//!
//! ```text
//! # comment
//! label=Fig.8a Hancock & Bradshaw
//! re_theta=4680,turbulence_level=0.0003
//! 70.5,11.9
//! 120    13.1
//! ```
//!
//! Metadata lines are `key=value` pairs (several per line, comma separated)
//! for the keys `label`, `re_theta`, `turbulence_level`, `U`, `nu` and
//! `u_star`. A `label=` line takes the rest of the line verbatim. Data rows
//! hold two numbers separated by a comma, spaces or tabs: `eta phi` for the
//! wall-units format, `y u` (SI units) for the raw format, which also needs
//! `u_star` and `nu`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;
use wallscale_core::{normalize_raw, ProfileMetadata, ValidationError, VelocityProfile, WallUnits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ProfileFormat {
    /// `eta, phi` rows.
    #[default]
    WallUnits,
    /// `y, u` rows in SI units, normalized with the `u_star` and `nu` metadata.
    Raw,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    ValidationAt { line: usize, source: ValidationError },
    #[error("{0}")]
    Validation(ValidationError),
}

fn parse_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse { line, message: message.into() }
}

fn parse_number(line: usize, field: &str) -> Result<f64, LoadError> {
    field.trim().parse::<f64>().map_err(|_| parse_err(line, format!("not a number: {field:?}")))
}

fn set_meta(meta: &mut ProfileMetadata, key: &str, value: &str, line: usize) -> Result<(), LoadError> {
    let slot = match key {
        "re_theta" => &mut meta.re_theta,
        "turbulence_level" => &mut meta.turbulence_level,
        "U" => &mut meta.free_stream_velocity,
        "nu" => &mut meta.nu,
        "u_star" => &mut meta.u_star,
        other => return Err(parse_err(line, format!("unknown metadata key {other:?}"))),
    };
    *slot = Some(parse_number(line, value)?);
    Ok(())
}

pub fn parse_profile(text: &str, format: ProfileFormat) -> Result<VelocityProfile, LoadError> {
    let mut meta = ProfileMetadata::default();
    let mut rows: Vec<(usize, f64, f64)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("label=") {
            meta.label = rest.trim().to_string();
            continue;
        }
        if line.contains('=') {
            for pair in line.split(',') {
                let (key, value) = pair
                    .split_once('=')
                    .ok_or_else(|| parse_err(line_no, format!("expected key=value, got {pair:?}")))?;
                set_meta(&mut meta, key.trim(), value, line_no)?;
            }
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        if fields.len() != 2 {
            return Err(parse_err(line_no, format!("expected 2 columns, found {}", fields.len())));
        }
        rows.push((line_no, parse_number(line_no, fields[0])?, parse_number(line_no, fields[1])?));
    }

    let samples = match format {
        ProfileFormat::WallUnits => rows.iter().map(|&(_, eta, phi)| WallUnits { eta, phi }).collect::<Vec<_>>(),
        ProfileFormat::Raw => {
            let (Some(u_star), Some(nu)) = (meta.u_star, meta.nu) else {
                return Err(parse_err(0, "raw format requires u_star and nu metadata"));
            };
            rows.iter()
                .map(|&(line, y, u)| normalize_raw(y, u, u_star, nu).map_err(|e| parse_err(line, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    VelocityProfile::new(samples, meta).map_err(|e| match e {
        wallscale_core::Error::Validation(v) => match sample_index(&v).and_then(|i| rows.get(i)) {
            Some(&(line, _, _)) => LoadError::ValidationAt { line, source: v },
            None => LoadError::Validation(v),
        },
        other => LoadError::Parse { line: 0, message: other.to_string() },
    })
}

fn sample_index(v: &ValidationError) -> Option<usize> {
    match *v {
        ValidationError::NonFinite { index }
        | ValidationError::NonPositive { index }
        | ValidationError::DuplicateEta { index }
        | ValidationError::NotIncreasing { index } => Some(index),
        _ => None,
    }
}

pub fn load_profile(path: &Path, format: ProfileFormat) -> Result<VelocityProfile, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_profile(&text, format)
}

/// Serializes in the wall-units format. Numbers use the shortest decimal
/// form that parses back to the same `f64`, so reloading is bit-exact.
pub fn write_profile(profile: &VelocityProfile) -> String {
    let m = profile.metadata();
    let mut out = String::from("# wall_units: eta,phi\n");
    if !m.label.is_empty() {
        let label: String = m.label.chars().map(|c| if c == '\n' || c == '\r' { ' ' } else { c }).collect();
        let _ = writeln!(out, "label={label}");
    }
    let fields = [
        ("re_theta", m.re_theta),
        ("turbulence_level", m.turbulence_level),
        ("U", m.free_stream_velocity),
        ("nu", m.nu),
        ("u_star", m.u_star),
    ];
    for (key, value) in fields {
        if let Some(v) = value {
            let _ = writeln!(out, "{key}={v:?}");
        }
    }
    for s in profile.samples() {
        let _ = writeln!(out, "{:?},{:?}", s.eta, s.phi);
    }
    out
}
