use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynError {
    #[error("iteration failed to converge: {0}")]
    ConvergenceFailure(&'static str),
    #[error("argument outside the admissible domain: {0}")]
    DomainError(&'static str),
    #[error("evaluation too close to the pole at u = {u}")]
    PoleError { u: f64 },
    #[error("operation requires the normalized field (a = 1)")]
    NotNormalized,
    #[error("nonlinearity coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("orbit left the configured bounding box")]
    EscapedAnnulus,
    #[error("integration exceeded the configured time budget")]
    MaxTimeExceeded,
    #[error("no sign-change bracket found: {0}")]
    NoBracket(&'static str),
    #[error("curve parameters must be strictly increasing with positive periods")]
    BadCurvePoint,
}

pub type Result<T> = std::result::Result<T, DynError>;
