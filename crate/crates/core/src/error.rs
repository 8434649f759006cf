use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the command-line exit-code contract: every variant
/// is a usage or domain failure (exit 2). Identity mismatches are never
/// errors; they are reported through [`crate::identities::IdentityReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request is malformed (unknown name, bad parameter combination).
    #[error("usage error: {0}")]
    Usage(String),
    /// The request would exceed a configured memory or size limit.
    #[error("resource error: {0}")]
    Resource(String),
    /// The function has no evaluation rule for the requested path.
    #[error("unsupported path: {0}")]
    Unsupported(String),
    /// A fast path cannot be used for this input; the caller should fall
    /// back to the divisor-sum oracle.
    #[error("fast path unavailable: {0}")]
    FastPathUnavailable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
