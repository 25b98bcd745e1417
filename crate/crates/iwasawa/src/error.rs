use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra kind mismatch: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("octonion matrices are not supported; use generator words")]
    OctonionMatrix,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("matrix is not J-unitary")]
    NotUnitary,
    #[error("point lies outside the fundamental domain")]
    OutsideDomain,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("expansion hit an invalid state: {0}")]
    BadExpansion(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
