use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps onto one of the stable exit classes used by the
/// command-line tool and the C interface (see [`Error::class`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution is empty")]
    Empty,

    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("entries sum to {sum}, expected 1 (tolerance {tolerance:e})")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("cannot draw {requested} distinct words of length {length} (only 2^{length} exist)")]
    TooMany { requested: u64, length: u32 },

    #[error("enumeration of {required} evaluations exceeds budget {budget}")]
    TooLarge { required: u128, budget: u128 },

    #[error("experiment needs {required} decoder bit-operations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Coarse classification of an [`Error`], stable across releases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or out-of-domain input.
    Validation,
    /// A resource budget would be exceeded.
    Budget,
}

impl Error {
    /// Name of the variant, used as a machine-greppable tag in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Empty => "Empty",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NonFinite { .. } => "NonFinite",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::Domain { .. } => "DomainError",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::InvalidCode(_) => "InvalidCode",
            Error::TooMany { .. } => "TooMany",
            Error::TooLarge { .. } => "TooLarge",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::TooLarge { .. } | Error::BudgetExceeded { .. } => ErrorClass::Budget,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_probability(what: &'static str, p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::Domain {
            what,
            value: p,
            domain: "[0, 1]",
        })
    }
}
