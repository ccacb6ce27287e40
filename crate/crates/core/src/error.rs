use thiserror::Error;

pub type Result<T> = std::result::Result<T, NtleError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NtleError {
    /// An argument or parameter lies outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite result: {0}")]
    NonFinite(String),

    /// The upper tail has underflowed (survival indistinguishable from 0).
    #[error("tail overflow: {0}")]
    TailOverflow(String),

    /// The lower tail has underflowed (cdf indistinguishable from 0).
    #[error("underflow: {0}")]
    Underflow(String),

    #[error("numerical failure in {what} (achieved error estimate {error_estimate:e})")]
    NumericalFailure { what: String, error_estimate: f64 },

    #[error("divergent integral: {0}")]
    Divergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl NtleError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        NtleError::Domain(msg.into())
    }

    pub(crate) fn numerical(what: impl Into<String>, error_estimate: f64) -> Self {
        NtleError::NumericalFailure {
            what: what.into(),
            error_estimate,
        }
    }

    /// True for failures of a numerical routine, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            NtleError::NonFinite(_)
                | NtleError::TailOverflow(_)
                | NtleError::Underflow(_)
                | NtleError::NumericalFailure { .. }
                | NtleError::Divergence(_)
        )
    }
}

impl From<std::io::Error> for NtleError {
    fn from(e: std::io::Error) -> Self {
        NtleError::Io(e.to_string())
    }
}
