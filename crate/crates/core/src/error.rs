use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text, with a 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Input that parses but names unknown or inconsistent objects.
    #[error("{0}")]
    Invalid(String),
    /// A well-formed query with no answer, e.g. a point requested on an empty variety.
    #[error("{0}")]
    Domain(String),
    /// A computation refused because it exceeds a size guard.
    #[error("{0}")]
    Guard(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    /// Process exit code for the CLI: 2 for usage and parse errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) => 2,
            Error::Domain(_) | Error::Guard(_) => 1,
        }
    }
}
