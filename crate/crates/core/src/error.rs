use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The adaptive quadrature ran out of budget before reaching the tolerance.
    /// Carries the best estimate found so far.
    #[error(
        "quadrature did not converge: estimate {estimate} (error {abs_error:e}, tolerance {tolerance:e}) after {evaluations} evaluations"
    )]
    Convergence {
        estimate: f64,
        abs_error: f64,
        tolerance: f64,
        evaluations: u64,
    },

    /// A computation produced a value that violates an internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "time must be positive and finite, got {t}"
        )))
    }
}
