use thiserror::Error;

/// Errors raised by the algebra, the numerics and the command line layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("divisibility error: {0}")]
    Divisibility(String),
    #[error("input is not W-invariant: {0}")]
    NotSymmetric(String),
    #[error("eigenvector certification failed: {0}")]
    EigenCertification(String),
    #[error("degenerate intertwiner step: {0}")]
    DegenerateStep(String),
    #[error("vanishing denominator at a resonant weight: {0}")]
    Resonant(String),
    #[error("height cap too small: {0}")]
    CapTooSmall(String),
    #[error("too close to a Gamma pole: {0}")]
    PoleProximity(String),
    #[error("ODE solver failure: {0}")]
    Solver(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
