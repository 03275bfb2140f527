use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("enumeration cap of {cap} exceeded (needed {needed})")]
    CapExceeded { cap: u64, needed: String },
    #[error("element does not lie in the subgroup")]
    NotInSubgroup,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("index {index} is out of range for alpha = {alpha}")]
    IndexOutOfRange { index: String, alpha: String },
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("elements belong to different walker contexts")]
    ContextMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("tower shape mismatch: {0}")]
    Shape(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("descent probe exceeded step cap {0}")]
    StepCapExceeded(usize),
    #[error("descent step did not decrease: {0}")]
    NotDescending(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
