use thiserror::Error;

/// Errors raised by the exact kernel, the seminorm oracles, the polytope
/// machinery and the reconstruction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("empty point set")]
    EmptyPointSet,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("oracle undefined here: {0}")]
    OracleUndefined(String),

    #[error("oracle is not total (table specs are evaluation-only)")]
    NotTotal,

    #[error("integrality violated: {0}")]
    IntegralityViolated(String),

    #[error("oracle violates the seminorm axioms: {0}")]
    OracleViolation(String),

    #[error("polar undefined: {0}")]
    PolarUndefined(String),

    #[error("nothing to separate: polytope is a single point")]
    NothingToSeparate,

    #[error("vertex index {index} out of range ({count} vertices)")]
    VertexIndex { index: usize, count: usize },

    #[error("non-integer vertex {0}")]
    NonIntegerVertex(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inequality chain violated at n={n}: {detail}")]
    ChainViolation { n: u64, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
