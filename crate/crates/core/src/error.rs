use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("cannot parse field element {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("overlapping components: {witness} lies in both I({a}) and I({b})")]
    OverlappingComponents { a: String, b: String, witness: String },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("residue tuple {0} is not in the index set")]
    TupleNotInSet(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("words evaluate to different group elements")]
    DifferentElements,

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
