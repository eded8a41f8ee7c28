use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of the file formats and the command-line tool, each with a
/// process exit code (see [`Error::exit_code`]).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] growthrate_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// Well-formed JSON that does not describe a valid object.
    #[error("schema violation: {0}")]
    Schema(String),
    /// A group or representation selector that cannot be resolved.
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// 2 for bad requests, 3 for bad data. Verification failures (1) are
    /// reported by the suites, not raised as errors.
    pub fn exit_code(&self) -> i32 {
        use growthrate_core::Error as E;
        match self {
            Error::Usage(_) => 2,
            Error::Core(E::InvalidParameter(_) | E::Unsupported(_) | E::MismatchedPrime { .. }) => 2,
            Error::Core(E::HorizonExceeded { .. }) => 2,
            Error::Core(E::Integrity(_) | E::NotCoprime { .. }) => 3,
            Error::Io { .. } | Error::Json(_) | Error::Schema(_) => 3,
        }
    }
}
