use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    /// No exact quotient exists. In certificate replays this signals a broken step.
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    /// The polynomial vanishes at an interval endpoint; callers perturb endpoints rationally.
    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(Rational),
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("expected a polynomial univariate in {0}")]
    NotUnivariate(&'static str),
    #[error("degree in {0} is too low for this operation")]
    DegreeTooLow(&'static str),
    #[error("interval endpoints must satisfy lo < hi")]
    EmptyInterval,
    #[error("computation cancelled by caller")]
    Cancelled,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, ExactError>;
