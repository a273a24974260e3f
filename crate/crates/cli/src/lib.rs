//! Experiment runner for the scrambling engines.
//!
//! A spec names an engine, its parameters and an optional analysis block;
//! [`run::run`] writes one CSV per system size and a `fit_report.json`.

pub mod bundled;
pub mod expr;
pub mod run;
pub mod spec;

pub use run::{run, ReportEntry};
pub use spec::{Engine, ExperimentSpec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("{0}")]
    Parse(String),
    #[error("missing required field `{field}`")]
    Missing { field: String },
    #[error("invalid field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{source_name}: {error}")]
    Spec { source_name: String, error: SpecError },
    #[error("runtime guard: {0}")]
    Guard(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec { .. } | CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}
