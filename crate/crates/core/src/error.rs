use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dims {0:?}: need at least two factors, each of dimension >= 2")]
    InvalidDims(Vec<usize>),
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: i64, max: usize },
    #[error("dimension mismatch: {0}")]
    DimsMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("coefficient {0} is not an integer")]
    NonInteger(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} must exceed N = {n}")]
    PrimeTooSmall { p: u64, n: usize },
    #[error("enumeration of {required} product tuples exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("Vandermonde points are not pairwise distinct")]
    DuplicatePoint,
    #[error("expected {expected} Vandermonde points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("size {m} outside admissible range {min}..={max}")]
    SizeOutOfRange { m: usize, min: usize, max: usize },
    #[error("operation requires k = 2, got k = {0}")]
    RequiresBipartite(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("basis is not orthonormal (Gram deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("product vector has a zero factor at site {0}")]
    ZeroFactor(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
