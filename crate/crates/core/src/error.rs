use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis change matrix is singular")]
    SingularMatrix,

    #[error("algebra is not nilpotent: powers stabilise at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },

    #[error("dimension {dim} is too small (need at least {min})")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid radicand {0}: must be a nonzero non-square rational")]
    InvalidRadicand(String),

    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: index e{index} out of range for dimension {dim}")]
    IndexOutOfRange { line: usize, index: usize, dim: usize },

    #[error("line {line}: duplicate product e{left} * e{right}")]
    DuplicateProduct { line: usize, left: usize, right: usize },

    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),

    #[error("bad rational literal `{0}`")]
    BadRational(String),

    #[error("entry {entry} has an irrational part and cannot be written to an algebra file")]
    ExtensionScalarNotSerializable { entry: String },

    #[error("entry {entry} has a denominator divisible by {p}")]
    DenominatorDivisibleByP { p: u64, entry: String },

    #[error("search space too large: about {estimate} nodes exceeds the cap of {cap}")]
    SearchSpaceTooLarge { estimate: f64, cap: f64 },

    #[error("{0} is not prime")]
    NotPrime(u64),
}
