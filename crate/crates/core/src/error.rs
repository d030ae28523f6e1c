use thiserror::Error;

/// A parse failure with the byte offset where it happened and what the parser
/// was looking for.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: expected {expected}, found {found}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub fn new(pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            pos,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Budan-Fourier needs every normalized derivative to be nonzero at the point.
    #[error("precondition violated: normalized derivative f^[{order}] vanishes at the point")]
    VanishingDerivative { order: usize },

    #[error("empty interval: left endpoint is not below right endpoint")]
    EmptyInterval,

    #[error("no strict sign change: f(a)*f(b) is not negative")]
    NoSignChange,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unsupported fragment: {0}")]
    UnsupportedFragment(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("order precondition violated at depth {depth}: {what}")]
    OrderViolation { depth: usize, what: String },

    #[error("invalid document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
