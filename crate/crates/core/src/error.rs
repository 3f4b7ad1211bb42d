use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("unknown variable {var} (ring has {count} basis classes)")]
    UnknownVariable { var: usize, count: usize },
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("invalid model ({invariant}): {detail}")]
    InvalidModel { invariant: &'static str, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("table miss at beta={beta:?}, insertions={insertions:?}")]
    TableMiss { beta: Vec<u32>, insertions: Vec<u32> },
    #[error("invalid table entry at beta={beta:?}, insertions={insertions:?}: {reason}")]
    InvalidEntry { beta: Vec<u32>, insertions: Vec<u32>, reason: String },
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("unreachable unknown: {0}")]
    Unreachable(String),
    #[error("no solvable equation for beta={beta:?}, insertions={insertions:?}")]
    NoSolvableEquation { beta: Vec<u32>, insertions: Vec<u32> },
    #[error("non-integral solution {value} at beta={beta:?}, insertions={insertions:?}")]
    NonIntegral { beta: Vec<u32>, insertions: Vec<u32>, value: String },
    #[error("indices must be distinct: {0:?}")]
    NotDistinct(Vec<usize>),
    #[error("quotient rank {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("nonzero residual: {0}")]
    Residual(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
