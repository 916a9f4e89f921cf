//! Crate-wide error type with the exit-code taxonomy used by the CLI.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed configuration: unknown group kinds, bad function-spec
    /// grammar, unknown keys. Exit code 2.
    #[error("configuration error: {0}")]
    Config(String),

    /// Domain violation in an operation argument. Exit code 2.
    #[error("argument error: {0}")]
    Argument(String),

    /// A grid or buffer would exceed the configured memory cap. Exit code 3.
    #[error("resource limit: {required_nodes} nodes required, cap is {cap_nodes}")]
    Resource {
        required_nodes: usize,
        cap_nodes: usize,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code for the CLI contract: 2 usage/config, 3 resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}
