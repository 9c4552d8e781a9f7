use thiserror::Error;

use crate::expr::{DomainError, SyntaxError};
use crate::interval::{Interval, IntervalError};

/// Errors produced by function construction, certification and integration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error(transparent)]
    Interval(#[from] IntervalError),

    #[error("lower endpoint exceeds upper endpoint at x = {x}: {lower} > {upper}")]
    OrderViolation { x: f64, lower: f64, upper: f64 },

    #[error("scaling function changes sign: positive at x = {positive_at}, negative at x = {negative_at}")]
    SignChange { positive_at: f64, negative_at: f64 },

    #[error(
        "values are not nested: first not inside second at x = {first_outside_at}, \
         second not inside first at x = {second_outside_at}"
    )]
    NestingViolation {
        first_outside_at: f64,
        second_outside_at: f64,
    },

    #[error("{what} = {value} lies outside the domain {domain}")]
    OutOfDomain {
        what: String,
        value: f64,
        domain: Interval,
    },

    #[error("domains differ: {left} vs {right}")]
    DomainMismatch { left: Interval, right: Interval },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not converge within {evaluations} evaluations")]
    NonConvergence { evaluations: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Short stable name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "SyntaxError",
            Error::Domain(_) => "DomainError",
            Error::Interval(_) => "IntervalError",
            Error::OrderViolation { .. } => "OrderViolation",
            Error::SignChange { .. } => "SignChange",
            Error::NestingViolation { .. } => "NestingViolation",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::DomainMismatch { .. } => "DomainMismatch",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::NonConvergence { .. } => "NonConvergence",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
