use thiserror::Error;

use crate::ring::RingElement;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a unit")]
    NotAUnit(RingElement),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("unsatisfiable evidence: {0}")]
    UnsatisfiableEvidence(String),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("exhaustive search needs {needed} candidates, cap is {cap}")]
    SearchCapExceeded { needed: u128, cap: u64 },

    #[error("step {step} does not divide length {n}")]
    BadIndex { step: usize, n: usize },

    #[error("code exceeds the size cap of {cap} codewords")]
    CodeTooLarge { cap: usize },

    #[error("brute-force dual over 16^{n} vectors exceeds the cap of {cap}")]
    DualTooLarge { n: usize, cap: u64 },

    #[error("scope too large: {0}")]
    ScopeTooLarge(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid Gau table: {}", .0.join("; "))]
    InvalidTable(Vec<String>),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
