use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type {family}{rank}: {reason}")]
    InvalidType {
        family: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("cannot parse root system type {0:?} (expected e.g. A2, B3, E6)")]
    UnparsableType(String),

    #[error("coordinate vector {0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("generator index {index} out of range 0..={rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("expected a vector of length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("tuple is not the Shi vector of an alcove: {0}")]
    NotAnAlcove(String),

    #[error("vector is not admissible: entry {position} = {value} outside 0..={max}")]
    NotAdmissible {
        position: usize,
        value: i64,
        max: i64,
    },

    #[error("admissible vector {0:?} is not admitted")]
    NotAdmitted(Vec<i64>),

    #[error("resource guard: {what} ({size}) exceeds limit {limit}; rerun with {flag}")]
    ResourceGuard {
        what: &'static str,
        size: u128,
        limit: u128,
        flag: &'static str,
    },

    #[error("malformed word {0:?}")]
    MalformedWord(String),

    #[error("malformed tuple {0:?}")]
    MalformedTuple(String),

    #[error("plotting needs a rank 2 type, got rank {0}")]
    PlotRank(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
