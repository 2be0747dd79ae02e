use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has no columns")]
    EmptyMatrix,
    #[error("column {0} is the zero vector")]
    ZeroColumn(usize),
    #[error("convex hull of the columns contains the origin")]
    OriginInHull,
    #[error("need at least {needed} columns, got {got}")]
    TooFewColumns { needed: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix has parallel columns")]
    ParallelColumns,
    #[error("matrix is not 1-prime: {0}")]
    NotOnePrime(String),
    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: i64, n: i64 },
    #[error("polynomial is not invertible modulo the given modulus")]
    NotInvertible,
    #[error("derivative order {order} exceeds n - 2 = {max}")]
    OrderTooHigh { order: u32, max: u32 },
    #[error("degenerate 2x2 base: query point lies on the shared ray of parallel columns")]
    DegenerateBase,
    #[error("pair ({0}, {1}) has modulus 1 and no periodic contribution")]
    TrivialModulus(usize, usize),
    #[error("closed form produced {0}, which is not a nonnegative integer")]
    NonIntegerResult(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("minors {0:?} are not pairwise relatively prime")]
    NotPairwiseCoprime([i64; 3]),
    #[error("bound denominator is not positive for direction ({0}, {1})")]
    DegenerateDirection(i64, i64),
    #[error("no stable run of solvable multiples found up to N = {0}")]
    HorizonExceeded(u64),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyMatrix => "EmptyMatrix",
            Error::ZeroColumn(_) => "ZeroColumn",
            Error::OriginInHull => "OriginInHull",
            Error::TooFewColumns { .. } => "TooFewColumns",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::ParallelColumns => "ParallelColumns",
            Error::NotOnePrime(_) => "NotOnePrime",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotInvertible => "NotInvertible",
            Error::OrderTooHigh { .. } => "OrderTooHigh",
            Error::DegenerateBase => "DegenerateBase",
            Error::TrivialModulus(..) => "TrivialModulus",
            Error::NonIntegerResult(_) => "NonIntegerResult",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotPairwiseCoprime(_) => "NotPairwiseCoprime",
            Error::DegenerateDirection(..) => "DegenerateDirection",
            Error::HorizonExceeded(_) => "HorizonExceeded",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
