use thiserror::Error;

use crate::rational::Rational;

/// Every failure the library can report.
///
/// Budget exhaustion is kept distinct from domain errors: it means a
/// semidecidable question (is this lazy series zero?) was not settled within
/// the exponent depth the caller allowed, not that the answer is "no".
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no nonzero coefficient found up to exponent depth {depth}")]
    BudgetExhausted { depth: Rational },

    #[error("division by zero series")]
    ZeroDivision,

    #[error("Cauchy modulus violated at depth {gamma}: indices {first} and {second} disagree")]
    CauchyViolation {
        gamma: Rational,
        first: usize,
        second: usize,
    },

    #[error("invalid order code: {0}")]
    InvalidCode(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("the rational function is zero")]
    ZeroFunction,

    #[error("the two orders are identical")]
    IdenticalOrders,

    #[error("witness extraction failed: {0}")]
    WitnessExtractionFailure(String),

    #[error("duplicate root {0}")]
    DuplicateRoot(String),

    #[error("unsupported interval endpoint: {0}")]
    UnsupportedEndpoint(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    /// Stable machine-readable identifier, used in JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BudgetExhausted { .. } => "budget_exhausted",
            Error::ZeroDivision => "zero_division",
            Error::CauchyViolation { .. } => "cauchy_violation",
            Error::InvalidCode(_) => "invalid_code",
            Error::InvalidSeries(_) => "invalid_series",
            Error::ZeroFunction => "zero_function",
            Error::IdenticalOrders => "identical_orders",
            Error::WitnessExtractionFailure(_) => "witness_extraction_failure",
            Error::DuplicateRoot(_) => "duplicate_root",
            Error::UnsupportedEndpoint(_) => "unsupported_endpoint",
            Error::Parse { .. } => "parse_error",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
