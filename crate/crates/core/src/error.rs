use thiserror::Error;

/// Errors raised by the origami toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },

    #[error("not a Delzant polytope: {0}")]
    NotDelzant(String),

    #[error("polytope is not simple")]
    NotSimple,

    #[error("face does not belong to this object: {0}")]
    FaceMismatch(String),

    #[error("malformed template: {0}")]
    MalformedTemplate(String),

    #[error("condition (1) violated: {0}")]
    ConditionOneViolation(String),

    #[error("condition (2) violated: {0}")]
    ConditionTwoViolation(String),

    #[error("vertex `{vertex}` is not a leaf (degree {degree})")]
    NotALeaf { vertex: String, degree: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no fixed points")]
    NoFixedPoints,

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("freeness violation: {0}")]
    FreenessViolation(String),

    #[error("shape mismatch: {0}")]
    ShapeError(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
