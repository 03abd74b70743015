use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i64, strands: usize },

    #[error("puncture index {index} out of range for rank {rank}")]
    PunctureOutOfRange { index: i64, rank: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("non-generic arrangement: {0}")]
    NonGeneric(String),

    #[error("loop index {index} out of range ({count} critical values)")]
    LoopOutOfRange { index: usize, count: usize },

    #[error("invalid exponent class {0}; expected 1, 2 or 3")]
    InvalidNu(i64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("lines L{0} and L{1} intersect in the complex")]
    LinesIntersect(usize, usize),

    #[error("vertex a{vertex} is not a {expected}")]
    WrongVertexKind { vertex: usize, expected: &'static str },

    #[error("factor {index} is not a power of a half-twist")]
    NotHalfTwistPower { index: usize },

    #[error("factor {index}: exponent sum {actual} differs from claimed degree {claimed}")]
    DegreeMismatch { index: usize, actual: i64, claimed: i64 },

    #[error("identity check failed: {0}")]
    IdentityViolation(String),

    #[error("invalid input: {0}")]
    Parse(String),
}
