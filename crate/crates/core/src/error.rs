use crate::family::ConstructionTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or inconsistent input: unknown ids, shape mismatches, bad parameters.
    #[error("invalid input: {0}")]
    Input(String),

    /// Well-formed input outside an operation's domain, such as a failed
    /// Hom-vanishing precondition or a dimension vector that is not a real root.
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal assertion of the construction pipeline failed.
    #[error("construction failed: {message}")]
    Construction {
        message: String,
        trace: Box<ConstructionTrace>,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Json(_) => 2,
            Error::Domain(_) => 3,
            Error::Construction { .. } => 4,
        }
    }
}
