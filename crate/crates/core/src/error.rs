use std::path::PathBuf;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A special function was evaluated outside its domain.
    #[error("{function}: argument {value} outside domain ({reason})")]
    Domain {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Data required by the operation is missing (e.g. genie channel state).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A numerical routine failed to converge or produced a non-finite value.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Scenario configuration could not be parsed or validated.
    #[error(transparent)]
    Config(#[from] crate::harness::ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
