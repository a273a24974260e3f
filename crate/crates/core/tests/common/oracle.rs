//! Reference computations built on the dense matrices and Pauli algebra.
#![allow(dead_code)]

use scramble_core::stabilizer::{Pauli2, StabilizerTableau, TwoQubitClifford};
use scramble_core::{jw_inverse, jw_map, BitVec, MajoranaString, PauliString};

use super::dense::{self, Mat};

pub fn string_dense(s: &MajoranaString) -> Mat {
    let modes: Vec<usize> = s.modes().iter_ones().collect();
    dense::majorana(s.num_modes() / 2, &modes, s.phase().exponent())
}

/// Rényi-2 entropy of qubits `lo..=hi` (1-based) from the dense projector.
pub fn dense_entropy(tab: &StabilizerTableau, lo: usize, hi: usize) -> f64 {
    let gens: Vec<Mat> = tab.rows().iter().map(string_dense).collect();
    let rho = dense::stabilizer_state(&gens);
    let trace = dense::trace(&rho).re;
    assert!((trace - 1.0).abs() < 1e-9, "projector trace {trace}");
    dense::renyi2_bits(&dense::partial_trace(&rho, tab.qubits(), lo - 1, hi - 1))
}

/// Image of `s` under exact conjugation by `gate` on qubits 0–1, computed
/// on the Pauli side of the Jordan–Wigner map.
pub fn conjugate_via_pauli(gate: &TwoQubitClifford, s: &MajoranaString) -> MajoranaString {
    let p = jw_inverse(s);
    let bit = |v: &BitVec, q: usize| v.get(q) as u8;
    let code = bit(p.x(), 0) | bit(p.z(), 0) << 1 | bit(p.x(), 1) << 2 | bit(p.z(), 1) << 3;
    let image = gate.conjugate(Pauli2::hermitian(code));
    let (mut x, mut z) = (p.x().clone(), p.z().clone());
    for q in 0..2 {
        x.set(q, image.bits >> (2 * q) & 1 == 1);
        z.set(q, image.bits >> (2 * q + 1) & 1 == 1);
    }
    jw_map(&PauliString::new(x, z, p.phase() * image.phase))
}
