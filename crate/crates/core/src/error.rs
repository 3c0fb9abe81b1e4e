use thiserror::Error;

use crate::poly::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected Q or F<p>)")]
    BadFieldName(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes modulo {p}")]
    DenominatorVanishes { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("arity mismatch: expected {expected} images, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("zero polynomial has no leading term")]
    ZeroLeadingTerm,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("total degree {degree} exceeds the safety cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Errors raised by the algebra modules built on top of `poly`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the map is not a retraction (condition fails at image {})", .index + 1)]
    NotARetraction { index: usize },
    #[error("image {} is neither zero nor a monic monomial", .index + 1)]
    NotMonomial { index: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{rule}: instance contradicts the forced conclusion: {detail}")]
    Incompatible { rule: String, detail: String },
    #[error("generator {generator} is not homogeneous (component degrees {degrees:?})")]
    Inhomogeneous { generator: String, degrees: Vec<i64> },
    #[error("corpus record {record}: {message}")]
    Corpus { record: String, message: String },
}

impl Error {
    /// True when the failure came from the degree safety cap.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Poly(PolyError::DegreeCap { .. }))
    }
}

impl From<FieldError> for Error {
    fn from(e: FieldError) -> Self {
        Error::Poly(PolyError::Field(e))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
