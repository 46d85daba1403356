//! Run orchestration for the Λ-atom/two-mode-cavity simulator: named
//! parameter presets, a flat key-value config format, deterministic time
//! sweeps with CSV output, and an oracle-validation mode that cross-checks
//! the closed-form dynamics against direct integration.

pub mod config;
pub mod preset;
pub mod sweep;
pub mod validate;

use thiserror::Error;

pub use config::{ConfigError, OutputSelection, RunConfig};
pub use preset::{preset, preset_catalog};
pub use sweep::{rows_to_csv, run_sweep, write_csv, OutputRow, SweepResult, SweepSummary};
pub use validate::{validate, validate_strict, ValidationReport};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Dynamics(#[from] lambda_cavity::DynamicsError),
    #[error(transparent)]
    Entanglement(#[from] lambda_cavity::EntanglementError),
    #[error(transparent)]
    Squeezing(#[from] lambda_cavity::SqueezingError),
    #[error("validation failed:\n{0}")]
    Validation(Box<ValidationReport>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Process exit code: 2 config, 3 validation, 4 numerics, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Validation(_) => 3,
            RunError::Dynamics(_) | RunError::Entanglement(_) | RunError::Squeezing(_) => 4,
            RunError::Io(_) => 1,
        }
    }
}
