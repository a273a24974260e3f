//! Majorana strings, height vectors and the Pauli correspondence.

mod height;
mod jw;
mod pauli;
mod phase;
mod string;

pub use height::{height_of, mean_size, size_of, HeightVector, NORMALIZATION_TOLERANCE};
pub use jw::{gamma_to_pauli, jw_inverse, jw_map, pauli_bits};
pub use pauli::PauliString;
pub use phase::Phase;
pub use string::MajoranaString;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MajoranaError {
    #[error("probabilities sum to {total}, expected 1")]
    NotNormalized { total: f64 },
    #[error("cannot parse Majorana string: {0}")]
    Parse(String),
}
