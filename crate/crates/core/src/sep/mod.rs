//! Classical particle dynamics: a symmetric exclusion process with a
//! four-site source (local model) and full reshuffles (nonlocal model).

mod config;
mod dynamics;
mod lattice;

pub use config::{SepConfig, SepVariant};
pub use dynamics::{run_ensemble, run_trajectory, trajectory_counts, SepSeries, SEP_CSV_HEADER};
pub use lattice::Lattice;

/// Number of sites the source acts on.
pub const SOURCE_SITES: usize = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SepError {
    #[error("lattice of {l} sites is too small, the source needs at least 5")]
    TooSmall { l: usize },
    #[error("{name} = {value} is not a probability")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
}
