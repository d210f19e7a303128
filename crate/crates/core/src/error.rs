use thiserror::Error;

/// Errors produced by library operations.
///
/// `Usage` covers malformed arguments (empty ranges, out-of-domain
/// parameters), `Validation` covers rejected input data and carries
/// enough position information to point at the offending record,
/// `Resource` covers requests that exceed a configured budget, and
/// `Factorization` reports a cofactor that survived the retry budget.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),

    #[error("domain: {0}")]
    Domain(String),

    #[error("resource: {0}")]
    Resource(String),

    #[error("validation: line {line}: {message}")]
    Validation { line: usize, message: String },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("factorization failed: stuck cofactor {cofactor} of {input}")]
    Factorization { input: u128, cofactor: u128 },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn validation(line: usize, msg: impl Into<String>) -> Self {
        Error::Validation {
            line,
            message: msg.into(),
        }
    }
}
