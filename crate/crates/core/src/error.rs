use thiserror::Error;

/// Errors raised by the algebra and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("natural-mode violation: {0}")]
    NaturalModeViolation(String),

    #[error("zero operator: {0}")]
    ZeroOperator(&'static str),

    #[error("zero vector has no eigen-operator")]
    ZeroVector,

    #[error("change of variable with scale 0")]
    ZeroScale,

    #[error("operator is not homogeneous: it has components of degrees {0}")]
    NotHomogeneous(String),

    #[error("exponent set has {0} element(s); at least 3 are needed")]
    TooSmall(usize),

    #[error("exponent set {0} is not normalized (needs 0 as an element and gcd 1)")]
    NotNormalized(String),

    #[error("invalid exponent set: {0}")]
    InvalidExponentSet(String),

    #[error("invalid polynomial subspace: {0}")]
    InvalidSubspace(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl Error {
    /// True for errors produced by the expression and set parsers.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
