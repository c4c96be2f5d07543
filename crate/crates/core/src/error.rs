use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid group morphism: {0}")]
    InvalidMorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree must be positive, got {0}")]
    InvalidDegree(usize),
    #[error("constant term must be {expected}, got {got}")]
    ConstantTerm { expected: String, got: String },
    #[error("input is not a Lie element")]
    NotLie,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("input is not group-like for the shuffle coproduct")]
    NotGroupLike,
    #[error("truncation mismatch: {0} vs {1}")]
    TruncMismatch(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
