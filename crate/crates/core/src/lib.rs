//! Operator scrambling in free-fermion circuits with a single interaction.
//!
//! Three engines that cross-check each other:
//!
//! * [`sep`]: a symmetric exclusion process with a four-site source,
//! * [`master`]: exact master equations over operator heights and sizes,
//! * [`stabilizer`]: Majorana-mode Clifford circuits for size and entropy.
//!
//! [`analysis`] turns their series into collapse errors and fitted rates.

pub mod analysis;
pub mod bits;
pub mod ensemble;
pub mod majorana;
pub mod master;
pub mod rng;
pub mod scalar;
pub mod sep;
pub mod series;
pub mod stabilizer;

pub use bits::BitVec;
pub use majorana::{
    height_of, jw_inverse, jw_map, mean_size, size_of, HeightVector, MajoranaError,
    MajoranaString, PauliString, Phase,
};
pub use scalar::Real;
pub use series::Series;

pub type HeightGenerator64 = master::HeightGenerator<f64>;
pub type SizeGenerator64 = master::SizeGenerator<f64>;
pub type DistributionState64 = master::DistributionState<f64>;
pub type NonlocalHeightOperator64 = master::NonlocalHeightOperator<f64>;
