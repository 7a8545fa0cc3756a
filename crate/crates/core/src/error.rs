use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("box mismatch: {left} vs {right}")]
    BoxMismatch { left: String, right: String },
    #[error("partition {partition} does not fit in box {shape}")]
    OutsideBox { partition: String, shape: String },
    #[error("expansion of {expr} is not integral: {detail}")]
    NonIntegralExpansion { expr: String, detail: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("entries {0} and {1} coincide; vector lies on a wall")]
    RegularityViolation(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::BoxMismatch { .. } => "BoxMismatch",
            Error::OutsideBox { .. } => "OutsideBox",
            Error::NonIntegralExpansion { .. } => "NonIntegralExpansion",
            Error::NonSquare { .. } => "NonSquare",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Singular => "Singular",
            Error::RegularityViolation(..) => "RegularityViolation",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
