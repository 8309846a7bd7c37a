//! Per-profile reports, batch summaries and plot-ready data files.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use wallscale_core::reynolds_diag::turbulence_shift_x;
use wallscale_core::scaling_model::{envelope_curve, DEFAULT_ENVELOPE_BRACKET, DEFAULT_ENVELOPE_RANGE};
use wallscale_core::{
    analyze_profile, AlphaSource, Analysis, AnalysisOptions, LogLawParams, ShiftClass, StageError, VelocityProfile,
};

use crate::format::{load_profile, LoadError, ProfileFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_FIT: i32 = 5;
pub const EXIT_PARTIAL_BATCH: i32 = 6;
pub const EXIT_ORACLE_MISMATCH: i32 = 7;

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("load_profile: {0}")]
    Load(#[from] LoadError),
    #[error("{0}")]
    Stage(#[from] StageError),
}

impl AnalyzeError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalyzeError::Load(LoadError::Io { .. }) => EXIT_IO,
            AnalyzeError::Load(LoadError::Parse { .. }) => EXIT_PARSE,
            AnalyzeError::Load(LoadError::Validation(_) | LoadError::ValidationAt { .. }) => EXIT_VALIDATION,
            AnalyzeError::Stage(_) => EXIT_FIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftClassTag {
    Collapsed,
    ShiftedBelow,
    ShiftedAbove,
}

impl From<ShiftClass> for ShiftClassTag {
    fn from(c: ShiftClass) -> Self {
        match c {
            ShiftClass::Collapsed => ShiftClassTag::Collapsed,
            ShiftClass::ShiftedBelow => ShiftClassTag::ShiftedBelow,
            ShiftClass::ShiftedAbove => ShiftClassTag::ShiftedAbove,
        }
    }
}

impl ShiftClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShiftClassTag::Collapsed => "collapsed",
            ShiftClassTag::ShiftedBelow => "shifted_below",
            ShiftClassTag::ShiftedAbove => "shifted_above",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSourceTag {
    /// alpha from the mean of ln Re1 and ln Re2
    #[default]
    Mean,
    /// alpha from ln Re1 (rough walls)
    LnRe1,
}

impl From<AlphaSourceTag> for AlphaSource {
    fn from(t: AlphaSourceTag) -> Self {
        match t {
            AlphaSourceTag::Mean => AlphaSource::Mean,
            AlphaSourceTag::LnRe1 => AlphaSource::LnRe1,
        }
    }
}

/// Thresholds an analysis ran with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cutoffs {
    pub lg_eta_min: f64,
    pub plateau_tol: Option<f64>,
    pub min_segment: usize,
    pub break_z: f64,
    pub consistency_tol: f64,
    pub shift_tol: f64,
    pub alpha_source: AlphaSourceTag,
}

impl Cutoffs {
    pub fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            selection: wallscale_core::Selection { lg_eta_min: self.lg_eta_min, plateau_tol: self.plateau_tol },
            min_segment: self.min_segment,
            break_z: self.break_z,
            consistency_tol: self.consistency_tol,
            shift_tol: self.shift_tol,
            alpha_source: self.alpha_source.into(),
        }
    }
}

impl Default for Cutoffs {
    fn default() -> Self {
        let o = AnalysisOptions::default();
        Cutoffs {
            lg_eta_min: o.selection.lg_eta_min,
            plateau_tol: o.selection.plateau_tol,
            min_segment: o.min_segment,
            break_z: o.break_z,
            consistency_tol: o.consistency_tol,
            shift_tol: o.shift_tol,
            alpha_source: AlphaSourceTag::Mean,
        }
    }
}

/// One row of the summary table plus diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub label: String,
    pub re_theta: Option<f64>,
    pub turbulence_level: Option<f64>,
    pub alpha: f64,
    #[serde(rename = "A")]
    pub prefactor: f64,
    pub beta: Option<f64>,
    #[serde(rename = "B")]
    pub region2_prefactor: Option<f64>,
    pub ln_re1: f64,
    pub ln_re2: f64,
    pub ln_re: f64,
    pub rel_discrepancy: f64,
    pub consistent: bool,
    pub re_theta_over_re: Option<f64>,
    /// Exponent used for the universal transform.
    pub alpha_universal: f64,
    pub mean_shift: f64,
    pub rms_scatter: f64,
    pub shift_class: ShiftClassTag,
    pub split_index: usize,
    pub break_ln_eta: f64,
    /// Index of the first selected sample in the input profile.
    pub selected_start: usize,
    pub selected_count: usize,
    pub cutoffs: Cutoffs,
}

impl AnalysisReport {
    pub fn from_analysis(profile: &VelocityProfile, a: &Analysis, cutoffs: Cutoffs) -> Self {
        let meta = profile.metadata();
        let d = &a.diagnostics;
        AnalysisReport {
            label: meta.label.clone(),
            re_theta: meta.re_theta,
            turbulence_level: meta.turbulence_level,
            alpha: a.alpha(),
            prefactor: a.prefactor(),
            beta: a.beta(),
            region2_prefactor: a.region2_prefactor(),
            ln_re1: d.ln_re1,
            ln_re2: d.ln_re2,
            ln_re: d.ln_re_mean,
            rel_discrepancy: d.rel_discrepancy,
            consistent: d.consistent,
            re_theta_over_re: d.re_theta_over_re,
            alpha_universal: a.series.alpha,
            mean_shift: a.series.mean_shift,
            rms_scatter: a.series.rms_scatter,
            shift_class: a.shift_class.into(),
            split_index: a.fit.split_index,
            break_ln_eta: a.fit.break_ln_eta,
            selected_start: a.selected_range.0,
            selected_count: a.selected.len(),
            cutoffs,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report fields serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Everything `analyze` produces for one file.
#[derive(Debug, Clone)]
pub struct AnalysisOutput {
    pub profile: VelocityProfile,
    pub analysis: Analysis,
    pub report: AnalysisReport,
}

pub fn analyze_loaded(profile: VelocityProfile, cutoffs: Cutoffs) -> Result<AnalysisOutput, AnalyzeError> {
    let analysis = analyze_profile(&profile, &cutoffs.options())?;
    let report = AnalysisReport::from_analysis(&profile, &analysis, cutoffs);
    Ok(AnalysisOutput { profile, analysis, report })
}

/// Load, select, fit, diagnose.
pub fn analyze(path: &Path, format: ProfileFormat, cutoffs: Cutoffs) -> Result<AnalysisOutput, AnalyzeError> {
    let mut profile = load_profile(path, format)?;
    if profile.metadata().label.is_empty() {
        let (samples, mut meta) = profile.into_parts();
        meta.label = file_stem(path);
        profile = VelocityProfile::new(samples, meta).expect("relabelling keeps a valid profile");
    }
    analyze_loaded(profile, cutoffs)
}

pub fn file_stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "profile".into())
}

fn fmt_opt(v: Option<f64>, prec: usize) -> String {
    match v {
        Some(x) => format!("{x:.prec$}"),
        None => "--".into(),
    }
}

/// Human-readable table: 3 decimals for exponents, 2 for `A`, `ln Re` columns and `Re_theta / Re`.
pub fn render_table(reports: &[AnalysisReport]) -> String {
    let width = reports.iter().map(|r| r.label.chars().count()).max().unwrap_or(0).max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>8}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}  {:>7}  {:>8}  {:>6}  {:>7}  {:<13}  consistent",
        "label", "Re_theta", "alpha", "A", "lnRe1", "lnRe2", "lnRe", "u'/U", "Re_th/Re", "beta", "shift", "collapse"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>6.3}  {:>6.2}  {:>6.2}  {:>6.2}  {:>6.2}  {:>7}  {:>8}  {:>6}  {:>7.3}  {:<13}  {}",
            r.label,
            fmt_opt(r.re_theta, 0),
            r.alpha,
            r.prefactor,
            r.ln_re1,
            r.ln_re2,
            r.ln_re,
            fmt_opt(r.turbulence_level, 4),
            fmt_opt(r.re_theta_over_re, 2),
            fmt_opt(r.beta, 3),
            r.mean_shift,
            r.shift_class.as_str(),
            if r.consistent { "yes" } else { "no" },
        );
    }
    out
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn columns(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out += &line.join(" ");
        out.push('\n');
    }
    out
}

/// Envelope of the power-law family next to the classical log law, over the default `ln eta` range.
pub fn envelope_table(range: (f64, f64), n_points: usize, bracket: (f64, f64)) -> wallscale_core::Result<String> {
    let curve = envelope_curve(range, n_points, bracket)?;
    Ok(columns(
        "ln_eta phi_env ln_re_touch log_law",
        curve.iter().map(|p| vec![p.ln_eta, p.phi_env, p.ln_re_touch, LogLawParams::CLASSICAL.phi_at_ln_eta(p.ln_eta)]),
    ))
}

/// Plot-ready files for one analysed profile. Returns the paths written.
pub fn emit_plotdata(out_dir: &Path, stem: &str, out: &AnalysisOutput) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let a = &out.analysis;
    let (start, end) = a.selected_range;
    let split = start + a.fit.split_index;
    let r1 = a.fit.region1;
    let r2 = a.fit.region2;
    let loglog = columns(
        "ln_eta ln_phi region fit1_ln_phi fit2_ln_phi",
        out.profile.samples().iter().enumerate().map(|(i, s)| {
            let region = if i < start || i >= end {
                0.0
            } else if i < split {
                1.0
            } else {
                2.0
            };
            let x = s.ln_eta();
            vec![x, s.ln_phi(), region, r1.ln_phi_at(x), r2.ln_phi_at(x)]
        }),
    );
    let universal = columns("ln_eta psi bisectrix", a.series.points.iter().map(|&(x, psi)| vec![x, psi, x]));
    let ln_re = a.diagnostics.ln_re_mean;
    let turbulence = columns(
        "x phi",
        a.selected.samples().iter().map(|s| vec![turbulence_shift_x(s.eta, s.phi, ln_re).unwrap_or(f64::NAN), s.phi]),
    );
    let envelope = envelope_table(DEFAULT_ENVELOPE_RANGE, 50, DEFAULT_ENVELOPE_BRACKET)
        .map_err(|e| io::Error::other(e.to_string()))?;

    let files = [
        (format!("{stem}.report.json"), out.report.to_json()),
        (format!("{stem}.loglog.dat"), loglog),
        (format!("{stem}.universal.dat"), universal),
        (format!("{stem}.turbulence.dat"), turbulence),
        ("envelope.dat".to_string(), envelope),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = out_dir.join(name);
        write_atomic(&path, &contents)?;
        written.push(path);
    }
    Ok(written)
}

/// Result of analysing every file in a directory.
#[derive(Debug)]
pub struct BatchOutcome {
    /// Successful reports sorted by label, then file name.
    pub reports: Vec<(PathBuf, AnalysisReport)>,
    pub failures: Vec<(PathBuf, AnalyzeError)>,
}

impl BatchOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_PARTIAL_BATCH
        }
    }

    pub fn summary(&self) -> String {
        let reports: Vec<AnalysisReport> = self.reports.iter().map(|(_, r)| r.clone()).collect();
        let mut out = render_table(&reports);
        for (path, err) in &self.failures {
            let _ = writeln!(out, "error  {}: {err}", path.display());
        }
        let _ = writeln!(out, "{} analysed, {} failed", self.reports.len(), self.failures.len());
        out
    }
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("cannot read directory {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("no profile files in {0}")]
    Empty(String),
}

/// Regular, non-hidden files of `dir` in name order.
pub fn profile_files(dir: &Path) -> Result<Vec<PathBuf>, BatchError> {
    let io_err = |source| BatchError::Io { path: dir.display().to_string(), source };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let entry = entry.map_err(io_err)?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if !hidden && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn batch(
    dir: &Path,
    format: ProfileFormat,
    cutoffs: Cutoffs,
    out_dir: Option<&Path>,
) -> Result<BatchOutcome, BatchError> {
    let files = profile_files(dir)?;
    if files.is_empty() {
        return Err(BatchError::Empty(dir.display().to_string()));
    }
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for path in files {
        let result = analyze(&path, format, cutoffs).and_then(|out| {
            if let Some(dir) = out_dir {
                emit_plotdata(dir, &file_stem(&path), &out)
                    .map_err(|source| LoadError::Io { path: dir.display().to_string(), source })?;
            }
            Ok(out.report)
        });
        match result {
            Ok(r) => reports.push((path, r)),
            Err(e) => failures.push((path, e)),
        }
    }
    reports.sort_by(|a, b| a.1.label.cmp(&b.1.label).then_with(|| a.0.cmp(&b.0)));
    Ok(BatchOutcome { reports, failures })
}
