use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; usage errors
/// live in the CLI layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("not a root of the system")]
    NotARoot,
    #[error("value is not integral: {0}")]
    NotIntegral(String),
    #[error("roots are proportional")]
    ProportionalRoots,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("bilinear form is singular")]
    SingularForm,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("element is not in the twisting ideal: {0}")]
    MembershipFailure(String),
    #[error("curve is degenerate (discriminant is zero)")]
    DegenerateCurve,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::NotARoot => "NotARoot",
            Error::NotIntegral(_) => "NotIntegral",
            Error::ProportionalRoots => "ProportionalRoots",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonSquare { .. } => "NonSquare",
            Error::SingularMatrix => "SingularMatrix",
            Error::SingularForm => "SingularForm",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::MembershipFailure(_) => "MembershipFailure",
            Error::DegenerateCurve => "DegenerateCurve",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
