use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] dualdag_core::Error),
    #[error(transparent)]
    Lang(#[from] dualdag_revlang::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(dualdag_core::Error::NonConvergence { .. })
            | CliError::Lang(dualdag_revlang::Error::Core(dualdag_core::Error::NonConvergence { .. })) => {
                exit::NON_CONVERGENCE
            }
            _ => exit::INPUT,
        }
    }
}
