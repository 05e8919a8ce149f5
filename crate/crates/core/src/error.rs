use thiserror::Error;

/// A syntax error at a byte offset (or line, for line-oriented input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at {position})")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials from different rings: {0} vs {1}")]
    MixedRing(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("the unit ideal has no dimension")]
    UnitIdeal,
    #[error("ideal is not homogeneous for the requested grading: {0}")]
    NotHomogeneous(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid flag type: {0}")]
    InvalidFlagType(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("non-apartment input: {0}")]
    NotApartment(String),
    #[error("random sampling failed: {0}")]
    Sampling(String),
    #[error("decomposition failed validation: {0}")]
    Validation(String),
    #[error("classification inconsistency: {0}")]
    Classification(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
