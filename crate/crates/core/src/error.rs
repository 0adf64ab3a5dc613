use thiserror::Error;

/// Failure modes shared by every kernel in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a precondition (q ≤ 0, z = 1, b = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A Pochhammer denominator or zeta argument hits a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// An index is outside the supported table range.
    #[error("range error: {0}")]
    Range(String),

    /// An intermediate quantity left the double range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A truncated series hit its term cap before reaching tolerance.
    #[error("no convergence in {what} after {terms} terms")]
    Convergence { what: String, terms: usize },

    /// The quadrature oracle exhausted its evaluation budget.
    #[error("quadrature budget of {budget} evaluations exceeded (estimate {estimate:e})")]
    BudgetExceeded { budget: usize, estimate: f64 },

    /// The integrand returned NaN or infinity at an interior sample.
    #[error("non-finite integrand sample at x = {0}")]
    NonFiniteSample(f64),

    /// A verification suite name is unknown or selects no identities.
    #[error("registry error: {0}")]
    Registry(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }

    /// True for failures caused by the caller's arguments rather than by
    /// numerical non-convergence.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Pole(_) | Error::Range(_) | Error::Overflow(_) | Error::Registry(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
