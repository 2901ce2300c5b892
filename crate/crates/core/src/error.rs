use thiserror::Error;

/// Errors raised across the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("ground-set mismatch: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },

    #[error("operation undefined on an empty family")]
    EmptyFamily,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedPermutation(_) => "malformed-permutation",
            Error::DomainMismatch { .. } => "domain-mismatch",
            Error::EmptyFamily => "undefined-on-empty",
            Error::OutOfRange(_) => "out-of-range",
            Error::Domain(_) => "domain",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Precondition(_) => "precondition",
            Error::ResourceGuard(_) => "resource-guard",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
