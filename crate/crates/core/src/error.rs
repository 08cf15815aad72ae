use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generators are linearly dependent over the reals")]
    DegenerateLattice,

    #[error("invariant `{invariant}` is undefined for {stratum}")]
    UndefinedInvariant {
        invariant: &'static str,
        stratum: &'static str,
    },

    #[error("{op} does not accept {stratum}: {reason}")]
    WrongStratum {
        op: &'static str,
        stratum: &'static str,
        reason: &'static str,
    },

    #[error("numeric failure in {context}: residual {residual:e}")]
    NumericFailure { context: &'static str, residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sample list is empty")]
    EmptySample,

    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
