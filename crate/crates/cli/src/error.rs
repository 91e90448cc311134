use std::path::PathBuf;

/// Errors raised by the experiment runner.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The configuration could not be parsed or is inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown preset `{0}` (see `bhlab list-presets`)")]
    UnknownPreset(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to write {path}: {message}")]
    Output { path: PathBuf, message: String },
}

impl CliError {
    /// Process exit code: 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownPreset(_) => 2,
            CliError::Io { .. } | CliError::Output { .. } => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
