use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input text.
    Parse,
    /// The caller violated a documented precondition (wrong ring, gcd, rank).
    Precondition,
    /// A hypothesis of the underlying construction failed (e.g. `det M == 0`).
    Hypothesis,
    /// An identity that must always hold was violated; indicates a bug.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous: term `{term}` has degree {found}, expected {expected}")]
    NotHomogeneous {
        term: String,
        found: String,
        expected: String,
    },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: String, found: String },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("degree underflow: {0}")]
    DegreeUnderflow(String),

    #[error("arity mismatch: expected {expected} generators, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("generators are not coprime: gcd = {0}")]
    NotCoprime(String),

    #[error("rank defect in {stage}: expected dimension {expected}, found {found}")]
    RankDefect {
        stage: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("determinant of {0} vanishes identically")]
    ZeroDeterminant(&'static str),

    #[error("saturation did not stabilize within a window of {cap} degrees above degree {degree}")]
    SaturationCap { degree: u32, cap: u32 },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::NotHomogeneous { .. } => ErrorClass::Parse,
            Error::ZeroDeterminant(_) | Error::SaturationCap { .. } => ErrorClass::Hypothesis,
            Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
