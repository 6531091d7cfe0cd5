use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Writing the report or CSV failed.
    pub const OUTPUT: i32 = 1;
    /// Bad arguments or input that violates a documented invariant.
    pub const INVALID_INPUT: i32 = 2;
    /// Two independent numerical routes disagreed.
    pub const PATHOLOGY: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("missing required input --{0}")]
    MissingInput(&'static str),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },

    #[error("bad fixture spec {spec:?}: {reason}")]
    Fixture { spec: String, reason: String },

    #[error("{context}: {source}")]
    Analysis {
        context: String,
        source: zuslab::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Write { .. } => exit::OUTPUT,
            CliError::Analysis { source, .. } if source.is_pathology() => exit::PATHOLOGY,
            _ => exit::INVALID_INPUT,
        }
    }
}

pub(crate) trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError>;
}

impl<T> Context<T> for zuslab::Result<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError> {
        self.map_err(|source| CliError::Analysis {
            context: what.into(),
            source,
        })
    }
}
