use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element ids must be pairwise distinct (got {0:?})")]
    DuplicateElement(Vec<usize>),
    #[error("element id {id} out of range for n = {n}")]
    OutOfRange { id: usize, n: usize },
    #[error("no value given for triple {0:?}")]
    IncompleteMap((usize, usize, usize)),
    #[error("conflicting values for triple {0:?}")]
    InconsistentEntry((usize, usize, usize)),
    #[error("invalid orientation value {0} (expected -1, 0 or 1)")]
    InvalidSign(i64),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("affine map has zero determinant")]
    SingularMap,
    #[error("points {0} and {1} share an x-coordinate; rotate before flattening")]
    VerticalPairUnresolvable(usize, usize),
    #[error("points {0:?} are collinear")]
    NonGeneralPosition((usize, usize, usize)),
    #[error("orientation map has zero-valued triples")]
    NotTotal,
    #[error("request too large: {0}")]
    TooLarge(String),
    #[error("base {base} too small: geometry disagrees with the combinatorial rule on triple {triple:?}")]
    BaseTooSmall { base: u64, triple: (usize, usize, usize) },
    #[error("post-hoc verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
