use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A schedule produced overlapping, non-increasing or shrinking intervals.
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("word generation: {0}")]
    Word(String),

    /// A carving extractor could not find its finite witness.
    #[error("extractor failed at round {round}: {reason}")]
    ExtractorFailure { round: u64, reason: String },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("no qualifying {0}")]
    NotFound(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
