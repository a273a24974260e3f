//! Exact master equations over operator heights and sizes.

mod generator;
mod integrate;
mod nonlocal;
mod size;

pub use generator::{build_generic_generator, build_local_generator, FourBody, HeightGenerator};
pub use integrate::{
    exact_mean_series, integrate, DistributionState, Integrator, MasterSeries, Solution,
    MASTER_CSV_HEADER, SNAPSHOT_CSV_HEADER,
};
pub use nonlocal::NonlocalHeightOperator;
pub use size::{build_size_generator, early_time_mean, p_hi, SizeGenerator};

use crate::scalar::Real;

/// Largest chain the height-space solvers accept (`2^14` states).
pub const MAX_HEIGHT_SITES: usize = 14;

/// A linear rate operator `df/dt = G f` on a probability vector.
pub trait RateOperator<T: Real> {
    fn dim(&self) -> usize;

    /// `out = G f`.
    fn apply(&self, f: &[T], out: &mut [T]);

    /// Largest total exit rate of any state.
    fn max_exit_rate(&self) -> T;

    /// Operator size carried by state `index`.
    fn size_of_index(&self, index: usize) -> usize;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MasterError {
    #[error("chain of {l} sites exceeds the height-space limit of {max}")]
    DimensionTooLarge { l: usize, max: usize },
    #[error("chain of {l} sites is too small, need at least 5")]
    TooSmall { l: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid rate `{field}` = {value}")]
    InvalidRate { field: &'static str, value: f64 },
    #[error("initial distribution sums to {total}, expected 1")]
    NotNormalized { total: f64 },
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("normalization correction {correction:e} at t = {time} exceeds {bound:e}")]
    StiffnessGuard { time: f64, correction: f64, bound: f64 },
}

pub(crate) fn check_sites(l: usize) -> Result<(), MasterError> {
    if l < 5 {
        Err(MasterError::TooSmall { l })
    } else if l > MAX_HEIGHT_SITES {
        Err(MasterError::DimensionTooLarge { l, max: MAX_HEIGHT_SITES })
    } else {
        Ok(())
    }
}

pub(crate) fn check_rate<T: Real>(field: &'static str, v: T) -> Result<(), MasterError> {
    if v >= T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(MasterError::InvalidRate { field, value: v.to_f64_lossy() })
    }
}
