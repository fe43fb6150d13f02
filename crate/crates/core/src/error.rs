use thiserror::Error;

pub type Result<T> = std::result::Result<T, LatticeError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("unsupported dimension {got}: {reason}")]
    UnsupportedDimension { got: usize, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value: {0}")]
    NonFinite(f64),

    #[error("basis is not Minkowski-reduced")]
    NotReduced,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("protocol unsupported: {0}")]
    ProtocolUnsupported(String),

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input")]
    EmptyInput,

    #[error("enumeration box of {0} candidates exceeds the oracle limit")]
    EnumerationTooLarge(u128),
}
