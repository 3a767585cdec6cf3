use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rewriting left the truncation window: {0}")]
    Truncation(String),

    #[error("bidegree outside the window: {0}")]
    Window(String),

    #[error("budget exceeded at (s={s}, t={t}); completed through t={completed_t}")]
    Budget { s: u32, t: u32, completed_t: i64 },

    #[error("malformed Adams data: {0}")]
    AdamsData(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-integral coefficient in {0}")]
    NonIntegral(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
