use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical "no" answers (not flat, not isomorphic, ...) are never errors;
/// they are reported through verdict types. Errors are reserved for malformed
/// input, violated preconditions and exhausted budgets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}: {1}")]
    ScalarParse(String, String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation {index} is not admissible: {reason}")]
    NonAdmissible { index: usize, reason: String },
    #[error("relation {index} is ill-typed: {reason}")]
    IllTypedRelation { index: usize, reason: String },
    #[error("quotient is not finite-dimensional within path length cap {cap}")]
    InfiniteDimensional { cap: usize },
    #[error("too many paths ({count}) while building the algebra; limit {limit}")]
    TooManyPaths { count: usize, limit: usize },
    #[error("invalid algebra homomorphism: {0}")]
    InvalidHom(String),

    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("invalid morphism of representations: {0}")]
    InvalidRepMap(String),
    #[error("representations live over different bases")]
    BaseMismatch,
    #[error("operation needs a finite-dimensional algebra, got a bare quiver: {0}")]
    NeedsAlgebra(String),

    #[error("sequence is not short exact: {0}")]
    NotExact(String),
    #[error("invalid Ext class: {0}")]
    InvalidClass(String),
    #[error("invalid A-object: {0}")]
    InvalidAObject(String),
    #[error("A-object is not flat (Tor_1 against simple {simple} is nonzero)")]
    NotFlat { simple: usize },
    #[error("invalid deformation element: {0}")]
    InvalidDeformation(String),
    #[error("invalid collection: {0}")]
    InvalidCollection(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
