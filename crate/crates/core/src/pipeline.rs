//! The per-profile analysis: sample selection, broken-line fit, Reynolds
//! estimates from region (I), and the universal-coordinate collapse.

use core::fmt;

use crate::error::Error;
use crate::profile::{intermediate_range, select_intermediate, Selection, VelocityProfile};
use crate::reynolds_diag::{
    build_universal_series, classify_shift, combine_reynolds, ln_re1_from_prefactor, ln_re2_from_exponent, AlphaSource,
    ReynoldsDiagnostics, ShiftClass, UniversalSeries, DEFAULT_CONSISTENCY_TOL, DEFAULT_SHIFT_TOL,
};
use crate::segmented_fit::{fit_broken_line, significant_break, BrokenLineFit, DEFAULT_BREAK_Z, DEFAULT_MIN_SEGMENT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub selection: Selection,
    pub min_segment: usize,
    pub break_z: f64,
    pub consistency_tol: f64,
    pub shift_tol: f64,
    pub alpha_source: AlphaSource,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            selection: Selection::default(),
            min_segment: DEFAULT_MIN_SEGMENT,
            break_z: DEFAULT_BREAK_Z,
            consistency_tol: DEFAULT_CONSISTENCY_TOL,
            shift_tol: DEFAULT_SHIFT_TOL,
            alpha_source: AlphaSource::Mean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    SelectIntermediate,
    FitBrokenLine,
    Reynolds,
    Universal,
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::SelectIntermediate => "select_intermediate",
            Stage::FitBrokenLine => "fit_broken_line",
            Stage::Reynolds => "reynolds_diag",
            Stage::Universal => "universal_series",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageError {
    pub stage: Stage,
    pub source: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage.name(), self.source)
    }
}

impl core::error::Error for StageError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        Some(&self.source)
    }
}

fn at(stage: Stage) -> impl FnOnce(Error) -> StageError {
    move |source| StageError { stage, source }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub selected: VelocityProfile,
    /// `[start, end)` of the selected samples within the input profile.
    pub selected_range: (usize, usize),
    pub fit: BrokenLineFit,
    /// Whether region (II) differs significantly from region (I).
    pub region2_revealed: bool,
    pub diagnostics: ReynoldsDiagnostics,
    /// Region-(I) samples in universal coordinates.
    pub series: UniversalSeries,
    pub shift_class: ShiftClass,
}

impl Analysis {
    /// Region-(I) prefactor `A`.
    pub fn prefactor(&self) -> f64 {
        self.fit.region1.prefactor
    }

    /// Region-(I) exponent `alpha`.
    pub fn alpha(&self) -> f64 {
        self.fit.region1.exponent
    }

    /// `beta`, present only when region (II) is revealed.
    pub fn beta(&self) -> Option<f64> {
        self.region2_revealed.then_some(self.fit.region2.exponent)
    }

    pub fn region2_prefactor(&self) -> Option<f64> {
        self.region2_revealed.then_some(self.fit.region2.prefactor)
    }
}

pub fn analyze_profile(profile: &VelocityProfile, opts: &AnalysisOptions) -> Result<Analysis, StageError> {
    let selected = select_intermediate(profile, opts.selection).map_err(at(Stage::SelectIntermediate))?;
    let selected_range = intermediate_range(profile.samples(), opts.selection);
    let fit = fit_broken_line(selected.samples(), opts.min_segment).map_err(at(Stage::FitBrokenLine))?;
    let region2_revealed = significant_break(&fit, opts.break_z);

    let ln_re1 = ln_re1_from_prefactor(fit.region1.prefactor).map_err(at(Stage::Reynolds))?;
    let ln_re2 = ln_re2_from_exponent(fit.region1.exponent).map_err(at(Stage::Reynolds))?;
    let diagnostics = combine_reynolds(ln_re1, ln_re2, profile.metadata().re_theta, opts.consistency_tol)
        .map_err(at(Stage::Reynolds))?;

    let region1 = &selected.samples()[..fit.split_index];
    let series =
        build_universal_series(region1, diagnostics.alpha_for(opts.alpha_source)).map_err(at(Stage::Universal))?;
    let shift_class = classify_shift(&series, opts.shift_tol);

    Ok(Analysis { selected, selected_range, fit, region2_revealed, diagnostics, series, shift_class })
}
