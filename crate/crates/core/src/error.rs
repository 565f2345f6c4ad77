use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("lattice is not even: diagonal entry {index} is {value}")]
    Odd { index: usize, value: String },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("sublattice is not primitive")]
    NotPrimitive,
    #[error("vector is not primitive")]
    VectorNotPrimitive,
    #[error("reflection is not integral on the lattice")]
    NonIntegralReflection,
    #[error("not an isometry")]
    NotIsometry,
    #[error("isometry is not stable")]
    NotStable,
    #[error("lattice is not of shape L_n for n = {0}")]
    NotLn(i64),
    #[error("root norm {0} does not give integral reflections")]
    NonReflective(i64),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is empty or not inside the positive cone: {0}")]
    BadCone(String),
    #[error("wall spec is empty")]
    EmptySpec,
    #[error("sublattice is not admissible: {0}")]
    Inadmissible(String),
    #[error("search limit exceeded: {0}")]
    Limit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
