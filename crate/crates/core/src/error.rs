use thiserror::Error;

use crate::rootsys::AxiomViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("bilinear form is not positive semidefinite")]
    NotPositiveSemidefinite,

    #[error("zero vector at position {index}")]
    ZeroVector { index: usize },

    #[error("duplicate vector {vector}")]
    DuplicateVector { vector: String },

    #[error("norm assignment incomplete: missing sign vector {missing}")]
    IncompleteAssignment { missing: String },

    #[error("not a subsystem of roots: {0}")]
    NotASubsystem(AxiomViolation),

    #[error("closure exceeded the size guard of {limit} vectors")]
    SizeExceeded { limit: usize },

    #[error("no catalog type matches component of rank {rank} with {roots} roots")]
    Unrecognized { rank: usize, roots: usize },

    #[error("invalid root system type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("duplicate weight {weight}: weights must be simple")]
    DuplicateWeight { weight: String },

    #[error("weight configuration: {0}")]
    InvalidConfig(String),

    #[error("{what} out of supported range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("parse error: {0}")]
    Parse(String),
}
