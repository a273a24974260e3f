//! Majorana-mode Clifford circuits: tableau evolution for entanglement and
//! Heisenberg evolution of a single string for operator size.

pub mod braid;
mod circuit;
pub mod clifford2;
mod tableau;

pub use braid::{apply_braid, apply_permutation, flip_mode_sign};
pub use circuit::{
    ee_series, ee_trajectory, heisenberg_size_series, size_trajectory, CircuitConfig, CircuitRun,
    CircuitTarget, CircuitVariant, CliffordSeries, InitialOperator, Scratch, EE_CSV_HEADER,
    SIZE_CSV_HEADER,
};
pub use clifford2::{Embedding, GateSet, MonomialAction, Pauli2, TwoQubitClifford};
pub use tableau::{StabilizerTableau, Subsystem};

use rand::Rng;

/// Uniform draw from the two-qubit Clifford group.
pub fn sample_two_qubit_clifford<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitClifford {
    TwoQubitClifford::sample(rng, GateSet::Uniform)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StabilizerError {
    #[error("{l} qubits is too few, need at least 2")]
    TooSmall { l: usize },
    #[error("subsystem {lo}..={hi} is not inside 1..={l}")]
    InvalidSubsystem { lo: usize, hi: usize, l: usize },
    #[error("braid probability {p} is outside [0, 1]")]
    InvalidProbability { p: f64 },
    #[error("mode map is not a permutation")]
    NotAPermutation,
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
}
