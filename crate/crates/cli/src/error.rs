use thiserror::Error;

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for invalid configuration, unreadable inputs or unwritable outputs.
pub const EXIT_CONFIG: i32 = 1;
/// Exit code for a failure inside a numerical stage.
pub const EXIT_NUMERICAL: i32 = 2;
/// Exit code of an audit whose checks did not all pass.
pub const EXIT_ACCEPTANCE: i32 = 3;

/// Failures of a command-line run, each mapped to a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// A configuration field is missing, malformed or out of range.
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
    /// An input file could not be read or an output could not be written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// A numerical stage failed; `stage` names it.
    #[error("stage `{stage}` failed: {message}")]
    Numerical { stage: &'static str, message: String },
}

impl CliError {
    /// Configuration error for `field`.
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config { field: field.into(), message: message.into() }
    }

    /// Numerical error in `stage`.
    pub fn numerical(stage: &'static str, err: impl std::fmt::Display) -> Self {
        Self::Numerical { stage, message: err.to_string() }
    }

    /// The process exit code for this error.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } | Self::Io { .. } => EXIT_CONFIG,
            Self::Numerical { .. } => EXIT_NUMERICAL,
        }
    }
}
