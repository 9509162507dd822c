use thiserror::Error;

/// Failures surfaced by the front end, split by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: flags, words, polynomials, JSON.
    #[error("parse error: {0}")]
    Parse(String),
    /// A computation refused or failed on well-formed input.
    #[error("{0}")]
    Domain(lagrep_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for parse errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<lagrep_core::Error> for CliError {
    fn from(e: lagrep_core::Error) -> Self {
        match e {
            lagrep_core::Error::Parse(msg) => CliError::Parse(msg),
            lagrep_core::Error::InvalidWord { index, reason } => CliError::Parse(format!("token {index}: {reason}")),
            other => CliError::Domain(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
