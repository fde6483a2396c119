use thiserror::Error;

/// Errors raised by the transseries engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of a non-positive constant")]
    LogNonPositive,
    #[error("sign undecided within {bits} bits of precision")]
    SignUndecided { bits: u32 },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("argument is not infinitesimal")]
    NotInfinitesimal,
    #[error("inner power series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("argument must be positive")]
    NonPositiveArgument,
    #[error("argument must be positive infinite")]
    NotPositiveInfinite,
    #[error("composition target must be positive infinite")]
    TargetNotPositiveInfinite,
    #[error("exponent is not purely infinite")]
    NotPurelyInfinite,
    #[error("truncation budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("epsilon is not small enough for the Taylor coefficients")]
    EpsilonTooLarge,
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unsupported exponent at {pos}: exponents must be rational literals")]
    UnsupportedExponent { pos: usize },
    #[error("malformed document: {0}")]
    MalformedDocument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
