//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to converge to its stated tolerance.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A smoothing or perturbation step produced a non-convex profile.
    #[error("convexity violated at phi = {phi:.6} rad (curvature numerator {kappa:.3e})")]
    Convexity { phi: f64, kappa: f64 },

    /// The scanned distribution appears positive definite on the grid.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// The requested perturbation size leaves no admissible body.
    #[error("epsilon too large for direction at angle {angle:.6} rad")]
    EpsilonTooLarge { angle: f64 },

    /// Invalid run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
