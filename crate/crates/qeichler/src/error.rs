use num_complex::Complex64;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A function was evaluated at (or too close to) one of its poles.
    #[error("pole of {what} at s = {at}")]
    Pole { what: &'static str, at: Complex64 },

    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or continued fraction failed to converge.
    #[error("{what} did not converge (achieved error {achieved:.3e})")]
    NonConvergence { what: &'static str, achieved: f64 },

    /// The truncation budget required to reach the requested tolerance
    /// exceeds the hard cap.
    #[error("truncation budget exceeded: need {needed} terms, cap is {cap}")]
    Budget { needed: usize, cap: usize },

    /// The form cannot be evaluated near the real axis (no transformation law).
    #[error("transformation law unavailable for this form: {0}")]
    UnsupportedForm(String),

    /// A quadrature did not reach the requested tolerance.
    #[error("quadrature failure: achieved error {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// Malformed form-spec file or invalid field combination.
    #[error("invalid form spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
