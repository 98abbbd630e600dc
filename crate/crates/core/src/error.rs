use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("stalled generator: the control register is all-zero and never selects a bit")]
    StalledGenerator,

    #[error("degenerate coset: exponent {exponent} has a cyclotomic coset of size {size} in GF(2^{degree})")]
    DegenerateCoset {
        exponent: u64,
        size: usize,
        degree: usize,
    },

    #[error("window too short: need {needed} bits, got {got}")]
    WindowTooShort { needed: usize, got: usize },

    #[error("verification mismatch at keystream bit {index}")]
    VerificationMismatch { index: usize },

    #[error("model mismatch: no candidate automaton reproduces the intercepted window")]
    ModelMismatch,

    #[error("zero operator: the polynomial vanishes modulo the characteristic polynomial")]
    ZeroOperator,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
