use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid Cartan type {input:?}: {reason}")]
    CartanType { input: String, reason: String },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not in the weight lattice")]
    NotInLattice(String),

    #[error("invalid embedding: {0}")]
    Embedding(String),

    #[error("negative multiplicity {mult} at weight {weight} (invalid embedding data)")]
    NegativeMultiplicity { weight: String, mult: i64 },

    #[error("invalid involution: {0}")]
    Involution(String),

    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("invalid rational {0:?}")]
    Rational(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
