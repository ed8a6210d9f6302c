//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by grid construction, transforms, and studies.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data or options (wrong sizes, bad ranges, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A sign invariant (`u < c`, `psi_y < 0`, `h_p > 0`) does not hold,
    /// so the requested operation is not defined.
    #[error("sign invariant violated: {0}")]
    SignInvariant(String),

    /// A monotone root solve could not bracket its target value.
    #[error("root not bracketed: {0}")]
    RootBracket(String),

    /// Requested mollification scale is not admissible for the region.
    #[error("scale eps = {eps} not in (0, eps0 = {eps0}) for region {region}")]
    ScaleTooLarge { eps: f64, eps0: f64, region: String },

    /// The two solutions passed to a paired operation do not correspond.
    #[error("mismatched solutions: {0}")]
    Mismatch(String),

    /// Operation refused for the given solution (e.g. classical residuals
    /// of a rough field).
    #[error("refused: {0}")]
    Refused(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Container or JSON decoding failure; `offset` is the byte position
    /// at which decoding stopped making sense.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: u64, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
