use std::path::PathBuf;

/// Failures surfaced by the command-line driver.
///
/// Every variant names the stage that failed so a bare message is enough
/// to locate the problem.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{stage}: malformed JSON at {path} (line {line}, column {column}): {message}")]
    Parse {
        stage: &'static str,
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{stage}: {path} {rule}")]
    Validation {
        stage: &'static str,
        path: String,
        rule: String,
    },

    #[error("{stage}: {source}")]
    Model {
        stage: &'static str,
        source: lbnes_core::Error,
    },

    #[error("{stage}: {}: {source}", path.display())]
    Io {
        stage: &'static str,
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{stage}: {message}")]
    Usage { stage: &'static str, message: String },
}

impl CliError {
    pub fn validation(stage: &'static str, path: impl Into<String>, rule: impl Into<String>) -> Self {
        CliError::Validation {
            stage,
            path: path.into(),
            rule: rule.into(),
        }
    }

    /// Wrap a core error raised during `stage`.
    pub fn model(stage: &'static str) -> impl FnOnce(lbnes_core::Error) -> Self {
        move |source| CliError::Model { stage, source }
    }

    pub fn io(stage: &'static str, path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { stage, path, source }
    }

    /// `true` when the numerics failed rather than the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, CliError::Model { source, .. } if source.is_numerical())
    }

    /// 0 is reserved for success; 1 for rejected input or IO, 2 for
    /// numerical failure.
    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            2
        } else {
            1
        }
    }
}
