use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input. `path` points at the offending field, e.g. `reps[2].summand`.
    #[error("invalid input at {path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{0}")]
    Domain(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Input { path: path.into(), msg: msg.into() }
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
