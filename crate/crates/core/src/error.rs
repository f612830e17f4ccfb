use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::Parse`] is the only variant that describes malformed input text;
/// every other variant is a violated precondition of some operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("negative level: {0}")]
    NegativeLevel(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("unsupported root datum: {0}")]
    UnsupportedDatum(String),
    #[error("invalid Hecke parameters: {0}")]
    InvalidParams(String),
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    #[error("invalid R-group: {0}")]
    InvalidRGroup(String),
    #[error("cocycle identity fails: {0}")]
    CocycleFailure(String),
    #[error("invalid eigen-data: {0}")]
    InvalidEigenData(String),
    #[error("order does not divide: {0}")]
    NonDivisible(String),
    #[error("missing first-occurrence datum for {label} in tower {tower}")]
    MissingFirstOccurrence { label: String, tower: String },
    #[error("negative chain length {0}")]
    NegativeChain(i64),
    #[error("unclassified cuspidal label {0}")]
    UnclassifiedLabel(String),
    #[error("first occurrence {r_min} exceeds the bound {bound}")]
    OccurrenceBound { r_min: u32, bound: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
