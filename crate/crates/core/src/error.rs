use thiserror::Error;

/// Errors raised by the quotient-group machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("pair {{{i},{j}}} is not a valid pair for n = {n}")]
    PairOutOfRange { i: usize, j: usize, n: usize },

    #[error("letter {letter} is out of range for {n} strands")]
    InvalidLetter { letter: i64, n: usize },

    #[error("braid word is not pure")]
    NotPure,

    #[error("parameters out of range: {0}")]
    Range(String),

    #[error("invalid block spec: {0}")]
    InvalidBlockSpec(String),

    #[error("element has infinite order")]
    InfiniteOrder,

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("linear system has no integer solution")]
    NoSolution,

    #[error("inconsistent system: {0}")]
    InconsistentSystem(String),

    #[error("not a solution of the Frobenius systems: {0}")]
    NotASolution(String),

    #[error("not a Frobenius subgroup: {0}")]
    NotFrobenius(String),

    #[error("sublattice is not invariant: {0}")]
    NonInvariantLattice(String),

    #[error("subgroup closure exceeded {0} elements")]
    ClosureTooLarge(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
