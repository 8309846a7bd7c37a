//! Analysis of mean-velocity profiles in wall-bounded turbulent shear flows
//! with the Reynolds-number-dependent scaling law
//! `phi = (ln Re / sqrt(3) + 5/2) eta^(3 / (2 ln Re))`.
//!
//! The crate is `no_std` with `alloc`. File formats, reports and the command
//! line live in the `wallscale` crate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod linefit;
pub mod minimize;
pub mod pipeline;
pub mod profile;
pub mod reynolds_diag;
pub mod scaling_model;
pub mod segmented_fit;
pub mod synth_gen;
pub mod tables;

pub use error::{Error, Result, ValidationError};
pub use pipeline::{analyze_profile, Analysis, AnalysisOptions, Stage, StageError};
pub use profile::{normalize_raw, select_intermediate, ProfileMetadata, Selection, VelocityProfile};
pub use reynolds_diag::{
    build_universal_series, classify_shift, combine_reynolds, ln_re1_from_prefactor, ln_re2_from_exponent,
    psi_transform, turbulence_shift_x, AlphaSource, ReynoldsDiagnostics, ShiftClass, UniversalSeries,
};
pub use scaling_model::{
    alpha_of_ln_re, envelope_at, envelope_line_fit, log_law_phi, scaling_law_phi, EnvelopePoint, LogLawParams,
    ScalingLawParams, WallUnits,
};
pub use segmented_fit::{fit_broken_line, fit_power_law, significant_break, BrokenLineFit, PowerLawSegment};
pub use synth_gen::{generate, generate_ensemble, ExplicitLaw, SynthSpec};
