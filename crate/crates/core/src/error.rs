use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("field of size {size} exceeds the configured cap {cap}")]
    FieldTooLarge { size: u64, cap: u64 },

    #[error("polynomial operations need a nonzero divisor")]
    DivisionByZero,

    #[error("expected a non-constant polynomial")]
    ConstantPolynomial,

    #[error("polynomial is not irreducible: {0}")]
    Reducible(String),

    #[error("{0} is a square in the base field")]
    SquareMultiplier(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("could not parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("class group saturated at order {reached} below the target {target}")]
    Saturated { reached: u64, target: u64 },

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
