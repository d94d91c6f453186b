use thiserror::Error;

use crate::permcore::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("not a permutation of 1..{len}: {values:?}")]
    InvalidPermutation { values: Vec<usize>, len: usize },

    #[error("flatten: duplicate key {key} at positions {first} and {second}")]
    DuplicateKey { key: String, first: usize, second: usize },

    #[error("{what} refused: n = {n} exceeds the cap of {cap} (override with a larger cap)")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("pattern {pattern} has a tight gap; {what} only applies to classical distant patterns")]
    TightGapUnsupported { pattern: String, what: &'static str },

    #[error("symmetry `{0}` is not defined on distant patterns")]
    UnsupportedSymmetry(&'static str),

    #[error("invalid prefix {prefix:?} for n = {n}")]
    InvalidPrefix { prefix: Vec<usize>, n: usize },

    #[error("empty pattern set")]
    EmptyPatternSet,

    #[error("{host} contains {pattern} at positions {witness:?}")]
    ContainsPattern { host: String, pattern: String, witness: Vec<usize> },

    #[error("cycle {cycle} spans {spread} > {bound}")]
    SpreadExceeded { cycle: String, spread: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("missing base count for size {0}")]
    MissingBase(usize),

    #[error("computation paths disagree: {0}")]
    Disagreement(String),

    #[error("cache I/O on {path}: {source}")]
    CacheIo {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
