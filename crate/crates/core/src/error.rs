use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(String),

    #[error("constant term of the series is not a unit in the coefficient domain")]
    NonUnitConstantTerm,

    #[error("divisor is not monic")]
    NonMonicDivisor,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("series order must be at least 1")]
    EmptyOrder,

    /// A quantity that must be an integer for a prime modulus was not.
    /// This always indicates a bug (or a mistranscribed formula), never bad input.
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),

    #[error("scan state corrupted: {0}")]
    StateCorruption(String),

    #[error("scan state does not match the requested computation: {0}")]
    StateMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
