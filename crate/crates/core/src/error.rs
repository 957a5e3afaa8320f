use thiserror::Error;

/// Errors raised by the library. Precondition violations on user input are
/// reported here; internal index misuse panics instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rank n = {0} is not supported (n >= 3 required)")]
    RankTooSmall(usize),
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("coordinate {index} is not strictly positive: {value}")]
    NonPositive { index: usize, value: String },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("Dynkin index {index} out of range for n = {n}")]
    BadIndex { index: usize, n: usize },
    #[error("nodes {0} and {1} are not adjacent in the Dynkin diagram")]
    NotAdjacent(usize, usize),
    #[error("spectral parameter required nonzero")]
    ZeroSpectralParameter,
    #[error("levels must be pairwise distinct")]
    EqualLevels,
    #[error("input is not a product of M-matrices: {0}")]
    NotMProduct(String),
    #[error("zero pivot at ({0},{1})")]
    ZeroPivot(usize, usize),
    #[error("matrix is not lower-triangular")]
    NotLowerTriangular,
    #[error("invalid crystal element: {0}")]
    InvalidCrystalElem(String),
    #[error("connectivity assumption violated: {uncovered} elements not reached")]
    Connectivity { uncovered: usize, sample: Vec<String> },
    #[error("oracle inconsistency: {0}")]
    OracleConflict(String),
    #[error("unknown check \"{0}\"")]
    UnknownCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
