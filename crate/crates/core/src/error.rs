use core::fmt;

/// Everything that can go wrong inside the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a formula.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// The minimum of a bracketed search sits on a bracket endpoint.
    Bracket {
        lo: f64,
        hi: f64,
        at: f64,
    },
    /// An interval argument is empty or reversed.
    Interval {
        lo: f64,
        hi: f64,
    },
    TooFewPoints {
        needed: usize,
        got: usize,
    },
    /// All abscissae coincide, so no slope can be fitted.
    Degenerate,
    Validation(ValidationError),
    /// Sample selection left fewer samples than a fit needs.
    EmptyResult {
        survivors: usize,
    },
    InvalidSpec(&'static str),
}

/// Violated invariant of a [`crate::VelocityProfile`].
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationError {
    TooFewSamples {
        got: usize,
    },
    NonFinite {
        index: usize,
    },
    NonPositive {
        index: usize,
    },
    /// `eta[index]` equals `eta[index - 1]`.
    DuplicateEta {
        index: usize,
    },
    /// `eta[index]` is smaller than `eta[index - 1]`.
    NotIncreasing {
        index: usize,
    },
    /// A metadata field that must be positive is not.
    Metadata {
        field: &'static str,
        value: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::Bracket { lo, hi, at } => {
                write!(f, "minimum at bracket endpoint {at} of [{lo}, {hi}]")
            }
            Error::Interval { lo, hi } => write!(f, "invalid interval [{lo}, {hi}]"),
            Error::TooFewPoints { needed, got } => {
                write!(f, "too few points: need {needed}, got {got}")
            }
            Error::Degenerate => f.write_str("degenerate fit: all ln(eta) values are equal"),
            Error::Validation(v) => write!(f, "validation error: {v}"),
            Error::EmptyResult { survivors } => {
                write!(f, "empty result: only {survivors} samples survive selection")
            }
            Error::InvalidSpec(why) => write!(f, "invalid synthetic spec: {why}"),
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::TooFewSamples { got } => {
                write!(f, "profile needs at least 4 samples, got {got}")
            }
            ValidationError::NonFinite { index } => write!(f, "sample {index} is not finite"),
            ValidationError::NonPositive { index } => {
                write!(f, "sample {index} has nonpositive eta or phi")
            }
            ValidationError::DuplicateEta { index } => {
                write!(f, "sample {index} duplicates the previous eta")
            }
            ValidationError::NotIncreasing { index } => {
                write!(f, "eta must be strictly increasing (sample {index})")
            }
            ValidationError::Metadata { field, value } => {
                write!(f, "metadata field {field} must be positive (got {value})")
            }
        }
    }
}

impl core::error::Error for Error {}
impl core::error::Error for ValidationError {}

impl From<ValidationError> for Error {
    fn from(v: ValidationError) -> Self {
        Error::Validation(v)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
