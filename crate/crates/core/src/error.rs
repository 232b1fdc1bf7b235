use thiserror::Error;

/// Errors raised by the library. Decoding failures are not errors; they are
/// reported through the decoder outcome types.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field degree m = {0} (expected 2..=8)")]
    UnsupportedFieldDegree(u32),

    #[error("reduction polynomial {poly:#x} is not primitive for m = {m}")]
    NotPrimitive { m: u32, poly: u32 },

    #[error("zero has no multiplicative inverse")]
    InverseOfZero,

    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{count} erasures declared but at most {max} can be corrected")]
    TooManyErasures { count: usize, max: usize },

    #[error("erasure position {position} is out of range for block length {n}")]
    ErasureOutOfRange { position: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} is out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("graph structure check failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
