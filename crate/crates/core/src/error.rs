//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("contour validation: {0}")]
    Validation(String),

    #[error("contour geometry: {0}")]
    Geometry(String),

    #[error("divergent kernel: {0}")]
    Divergence(String),

    #[error("branch cut: {0}")]
    Branch(String),

    #[error("insufficient signal: {0}")]
    InsufficientSignal(String),

    #[error("Landau pole: {0}")]
    LandauPole(String),

    #[error("input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
