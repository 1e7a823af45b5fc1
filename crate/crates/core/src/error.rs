use thiserror::Error;

/// Errors raised by floerkit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("differential composition d_out * d_in is nonzero")]
    CompositionNonzero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("bad step list: {0}")]
    BadSteps(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("region is not a difference of downward-closed sets: {0}")]
    NotSubquotient(String),

    #[error("region meets the diagonal of generator {0} in infinitely many points")]
    Infinite(String),

    #[error("exact triangle check failed: {0}")]
    ExactnessFailure(String),

    #[error("complex has no generators")]
    EmptyComplex,

    #[error("complex is not knot-like: H(i=0) has rank {0}, expected 1")]
    NotKnotLike(usize),

    #[error("surgery coefficient N = {n} is below the large-surgery threshold {min}")]
    NTooSmall { n: i64, min: i64 },

    #[error("parity failure: n - m = {0} is odd")]
    ParityFailure(i64),

    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("invalid surgery sample: {0}")]
    InvalidSample(String),

    #[error("q must be nonzero")]
    ZeroDenominator,

    #[error("complex has {0} generators after reduction; the equivalence search caps at {1}")]
    TooLarge(usize, usize),

    #[error("equivalence search exceeded its budget")]
    SearchBudget,

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error("wrong classification: expected {expected}, got {got}")]
    WrongClass { expected: String, got: String },
}

pub type Result<T> = std::result::Result<T, Error>;
