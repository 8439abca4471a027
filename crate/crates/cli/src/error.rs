use thiserror::Error;

use col_core::error::{DelayError, GameError, SimError};

/// Syntax error in a game expression. Lines and columns count from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ExprError {
    pub line: usize,
    pub col: usize,
    /// The input ended before the expression did.
    pub at_eof: bool,
    pub message: String,
}

impl ExprError {
    pub(crate) fn unexpected(line: usize, col: usize, want: &str, found: &impl ToString) -> Self {
        let found = found.to_string();
        ExprError {
            line,
            col,
            at_eof: found == "end of input",
            message: format!("expected {want}, found {found}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("unknown atom `{0}`: not in the definitions file")]
    UnknownAtom(String),
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: game `{name}`: {source}")]
    BadGame {
        path: String,
        name: String,
        source: GameError,
    },
}

/// Everything a subcommand can fail with, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Elab(#[from] ElabError),
    #[error("{0}")]
    File(#[from] FileError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Delay(#[from] DelayError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Sim(SimError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::NotStatic { .. } => CliError::Precondition(e.to_string()),
            SimError::Delay(d) => CliError::Delay(d),
            other => CliError::Sim(other),
        }
    }
}

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Expr(_)
            | CliError::Elab(_)
            | CliError::File(_)
            | CliError::Usage(_)
            | CliError::Io(_) => EXIT_PARSE,
            CliError::Delay(_) | CliError::Precondition(_) | CliError::Sim(_) => EXIT_PRECONDITION,
        }
    }
}
