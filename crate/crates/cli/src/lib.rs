//! Suite orchestration, expression parsing and reports for the `su21` binary.

pub mod config;
pub mod expr;
pub mod report;
pub mod serialize;
pub mod suite;

use su21_core::induction::InductionError;
use su21_core::module::ModuleError;

/// Errors that end a command before any check runs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("solver inconsistency: {0}")]
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::InvalidTarget(_) | ModuleError::NotNonholomorphic(_) | ModuleError::WindowOverflow(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<InductionError> for CliError {
    fn from(e: InductionError) -> Self {
        match e {
            InductionError::Module(m) => m.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}
