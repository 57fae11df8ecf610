use thiserror::Error;

/// Errors shared by the symbolic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol index {index} out of range for signature ({r},{s})")]
    IndexOutOfRange { index: u8, r: u8, s: u8 },
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("substitution replacement must be homogeneous of the target's parity")]
    ParityMismatch,
    #[error("expected an odd symbol")]
    ExpectedOdd,
    #[error("expected an even symbol")]
    ExpectedEven,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("inhomogeneous input")]
    Inhomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element is not in the expected span")]
    NotInSpan,
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("nonzero action beyond the truncation window")]
    ContinuityViolated,
}
