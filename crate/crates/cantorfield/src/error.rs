//! Error type shared by all evaluators.

/// Errors produced by the evaluators and verification suites.
///
/// Bisection failures carry the final bracket so callers can diagnose
/// which inversion went wrong and where it stalled.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stage index requires a power of three beyond integer range.
    #[error("depth limit: stage {stage} needs 3^{stage}, beyond the supported integer range")]
    DepthLimit { stage: u32 },

    /// Bisection did not reach the requested tolerance.
    #[error(
        "bisection did not converge after {iterations} iterations; final bracket [{lo}, {hi}]"
    )]
    NoConvergence { lo: f64, hi: f64, iterations: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
