use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grade index: {0}")]
    InvalidIndex(String),
    #[error("invalid letter: {0}")]
    InvalidLetter(String),
    #[error("multibracket of an empty list")]
    EmptyBracket,
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("operation needs a surface alphabet (p = q = g >= 1)")]
    NotSurfaceMode,
    #[error("series bounds or alphabets differ")]
    BoundMismatch,
    #[error("degree {degree} exceeds truncation bound {bound}")]
    BoundExceeded { degree: u32, bound: u32 },
    #[error("not a Lie element, residue {0}")]
    NotALieElement(String),
    #[error("not in level {level}: {detail}")]
    NotInLevel { level: String, detail: String },
    #[error("not in the image of the wedge encoding: {0}")]
    NotInImage(String),
    #[error("symplectic check failed: {0}")]
    SymplecticCheckFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("computation too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
