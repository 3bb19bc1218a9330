use thiserror::Error;

pub type Result<T, E = GeodesyError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesyError {
    #[error("point does not belong to a {expected} space")]
    KindMismatch { expected: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("curve endpoints coincide; a geodesic needs distinct endpoints")]
    DegenerateCurve,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("parameter {0} lies outside [0, 1]")]
    ParameterOutOfRange(String),

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("invalid scalar literal {0:?}")]
    ParseScalar(String),

    #[error("exact arithmetic required: {0}")]
    NotExact(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {identity} off by {residual}")]
    Precondition { identity: String, residual: String },

    #[error("vector is not a unit vector (norm {0})")]
    NotUnitVector(String),

    #[error("Laakso level {0} exceeds the cap of {1}")]
    LevelCap(u32, u32),

    #[error("invalid branch plan: {0}")]
    InvalidPlan(String),

    #[error("chooser returned a curve indistinguishable from the original on window {0}")]
    IndistinguishableAlternative(String),

    #[error("no alternative geodesic between {0}")]
    NoAlternative(String),

    #[error("metric inconsistency: {0}")]
    Inconsistent(String),
}
