use alloc::string::String;

/// Errors raised by the algebra substrate and the structure pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands use different variable lists")]
    VariableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("too many variables ({0}); at most {max} are supported", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("incompatible gradient components: {0}")]
    Incompatible(String),
    #[error("expected a polynomial, found a proper rational function: {0}")]
    NotPolynomial(String),
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;
