//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while evaluating, sampling or certifying.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A pole of the evaluated function (Γ, ζ, θ or φ).
    #[error("pole: {0}")]
    Pole(String),

    /// The rigorous error bound could not be brought below the requested target.
    #[error("precision failure: {0}")]
    PrecisionFailure(String),

    /// More expansion terms are needed than the configured cap allows.
    #[error("truncation failure: {0}")]
    TruncationFailure(String),

    /// Two quadrature resolutions disagree beyond tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureUnconverged(String),

    /// A Maass coefficient file is malformed or fails the Hecke checks.
    #[error("invalid Maass record: {0}")]
    InvalidRecord(String),

    /// A zero norm where a positive one is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Reading a file failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
