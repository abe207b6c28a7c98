use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("images of length {len} are not a bijection of 0..{len}")]
    NotABijection { len: usize },

    #[error("invalid cycle type: sum of i*m_i is {weighted_sum}, expected degree {degree}")]
    InvalidCycleType { degree: u64, weighted_sum: u64 },

    #[error("level {requested} is below the element's level {current}")]
    LevelBelowCurrent { current: usize, requested: usize },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("level must be at least 1")]
    InvalidLevel,

    #[error("base sequence entries must all be greater than 1 and the tail non-empty")]
    InvalidBaseSequence,

    #[error("{what} {needed} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("parts must be weakly decreasing and positive")]
    InvalidPartition,

    #[error("entry {entry} is out of range 1..={max}")]
    EntryOutOfRange { entry: usize, max: usize },

    #[error("generator index {index} is out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },

    #[error("tail {tail} with first row at most {first} does not fit under a first row of an {n}-cell shape")]
    TailTooLarge { n: usize, tail: usize, first: usize },

    #[error("the bound hypothesis requires at least 4 cells, got {n}")]
    BelowBoundHypothesis { n: usize },

    #[error("identity element rejected: {0}")]
    IdentityInput(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
