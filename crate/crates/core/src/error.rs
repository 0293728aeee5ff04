use thiserror::Error;

/// Errors raised while building or applying quadrature rules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pole at {pole} lies on or too close to the support [{lo}, {hi}] (distance {distance:.3e})")]
    PoleOnSupport {
        pole: String,
        lo: f64,
        hi: f64,
        distance: f64,
    },

    #[error("non-positive beta coefficient beta[{index}] = {value:e}")]
    NonPositiveBeta { index: usize, value: f64 },

    #[error("tridiagonal eigensolver did not converge for eigenvalue {index} within {sweeps} sweeps")]
    EigensolverFailure { index: usize, sweeps: usize },

    #[error("{what} did not converge (last parameter {last})")]
    ConvergenceFailure { what: &'static str, last: usize },

    #[error("non-finite value {value} at t = {at}")]
    NonFiniteValue { at: f64, value: f64 },

    #[error("unsupported pole configuration: {0}")]
    UnsupportedCase(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::PoleOnSupport { .. } => "PoleOnSupport",
            Error::NonPositiveBeta { .. } => "NonPositiveBeta",
            Error::EigensolverFailure { .. } => "EigensolverFailure",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::UnsupportedCase(_) => "UnsupportedCase",
        }
    }

    /// True for errors caused by bad arguments rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::PoleOnSupport { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
