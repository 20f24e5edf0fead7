use std::path::PathBuf;

use cutplan::ErrorKind;
use thiserror::Error;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid structure document: {0}")]
    Document(String),

    #[error(transparent)]
    Core(#[from] cutplan::Error),

    #[error("CacheMismatch: cached fraction plan differs from a fresh solve: {0}")]
    CacheMismatch(String),

    #[error("AuditFailed: {0}")]
    AuditFailed(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Parse(_) => "Parse",
            CliError::Document(_) => "Document",
            CliError::Core(e) => e.name(),
            CliError::CacheMismatch(_) => "CacheMismatch",
            CliError::AuditFailed(_) => "AuditFailed",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Input => EXIT_INPUT,
                ErrorKind::Budget => EXIT_BUDGET,
                ErrorKind::Internal => EXIT_INTERNAL,
            },
            CliError::CacheMismatch(_) | CliError::AuditFailed(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }

    /// Suggested budget for `BudgetTooSmall`.
    pub fn suggested_tests(&self) -> Option<u64> {
        match self {
            CliError::Core(cutplan::Error::BudgetTooSmall { n_zero, .. }) => Some(*n_zero),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut error = serde_json::json!({
            "kind": self.name(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let Some(n) = self.suggested_tests() {
            error["suggested_tests"] = n.into();
        }
        serde_json::json!({ "error": error })
    }
}
