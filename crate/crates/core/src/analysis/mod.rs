//! Finite-size collapse and fits on ensemble series.

mod collapse;
mod fit;

pub use collapse::{collapse_error, CollapseSpec};
pub use fit::{
    fit_exponential_rate, fit_power_law, linear_fit, saturation_value, FitResult, LinearFit, Window,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("rescaled curves do not overlap")]
    NoOverlap,
    #[error("non-positive value {value} at t = {t} inside a logarithmic fit window")]
    NonPositive { t: f64, value: f64 },
    #[error("{points} points available, need at least {needed}")]
    TooShort { points: usize, needed: usize },
    #[error("invalid analysis parameter: {0}")]
    InvalidSpec(String),
}
