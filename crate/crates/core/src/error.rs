use thiserror::Error;

/// Errors raised by evaluation, enumeration and symbolic reduction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the region where the quantity is defined or the
    /// identity holds.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested accuracy could not be certified.
    #[error("precision error: {0}")]
    Precision(String),

    /// Size parameter outside the supported range.
    #[error("bound error: {0}")]
    Bound(String),

    #[error("unsupported depth {depth} (maximum {max})")]
    UnsupportedDepth { depth: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
