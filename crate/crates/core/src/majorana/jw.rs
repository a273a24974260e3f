//! Jordan–Wigner correspondence between `L` qubits and `2L` Majorana modes.
//!
//! Mode `2q` (0-based) is `X_0 … X_{q-1} Z_q` and mode `2q+1` is
//! `X_0 … X_{q-1} Y_q`, so `X_q = i γ_{2q} γ_{2q+1}`.

use crate::bits::{strict_suffix_parity, BitVec, WORD};

use super::string::hermitian_exponent;
use super::{MajoranaString, PauliString, Phase};

/// Majorana image of a Pauli string, phase included.
pub fn jw_map(p: &PauliString) -> MajoranaString {
    let l = p.qubits();
    let m = 2 * l;
    let mut out = MajoranaString::identity(m);
    let mut x_string = MajoranaString::identity(m);
    for q in 0..l {
        let image = match (p.x().get(q), p.z().get(q)) {
            (false, false) => None,
            (true, false) => Some(MajoranaString::pair(m, 2 * q, 2 * q + 1)),
            (false, true) => Some(x_string.multiply(&MajoranaString::gamma(m, 2 * q))),
            (true, true) => Some(x_string.multiply(&MajoranaString::gamma(m, 2 * q + 1))),
        };
        if let Some(image) = image {
            out = out.multiply(&image);
        }
        x_string = x_string.multiply(&MajoranaString::pair(m, 2 * q, 2 * q + 1));
    }
    out.mul_phase(p.phase());
    out
}

/// Pauli image of a single mode.
pub fn gamma_to_pauli(qubits: usize, mode: usize) -> PauliString {
    let q = mode / 2;
    let mut x = BitVec::zeros(qubits);
    let mut z = BitVec::zeros(qubits);
    for j in 0..q {
        x.set(j, true);
    }
    z.set(q, true);
    if mode % 2 == 1 {
        x.set(q, true);
    }
    PauliString::new(x, z, Phase::ONE)
}

/// Inverse of [`jw_map`]. The mode count must be even.
pub fn jw_inverse(s: &MajoranaString) -> PauliString {
    let m = s.num_modes();
    assert!(m % 2 == 0, "odd mode count {m}");
    let l = m / 2;
    let mut out = PauliString::identity(l);
    for k in s.modes().iter_ones() {
        out = out.multiply(&gamma_to_pauli(l, k));
    }
    let phase = s.phase() * Phase::from_exponent(hermitian_exponent(s.weight()));
    out.set_phase(out.phase() * phase);
    out
}

/// Bits `0, 2, 4, …` of `x` packed into the low 32 bits.
#[inline]
pub(crate) fn even_bits(mut x: u64) -> u64 {
    x &= 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF
}

/// Qubit `x` and `z` bits of the Pauli image of a mode pattern, phase dropped.
pub fn pauli_bits(modes: &BitVec) -> (BitVec, BitVec) {
    assert!(modes.len() % 2 == 0, "odd mode count");
    let l = modes.len() / 2;
    let mut x = BitVec::zeros(l);
    let mut z = BitVec::zeros(l);
    let words = modes.words();
    let mut carry = 0u32;
    for k in (0..words.len()).rev() {
        let w = words[k];
        let above = strict_suffix_parity(w) ^ if carry & 1 == 1 { u64::MAX } else { 0 };
        let a = even_bits(w);
        let b = even_bits(w >> 1);
        let n = even_bits(above >> 1);
        let shift = 32 * (k % 2);
        x.words_mut()[k / 2] |= (b ^ n) << shift;
        z.words_mut()[k / 2] |= (a ^ b) << shift;
        carry ^= w.count_ones();
    }
    // Parity from the padding region past `2L` is zero, but `n` may set bits
    // past `L` in the last half word; clear them.
    let tail = l % WORD;
    if tail != 0 {
        let last = x.words().len() - 1;
        x.words_mut()[last] &= (1u64 << tail) - 1;
        z.words_mut()[last] &= (1u64 << tail) - 1;
    }
    (x, z)
}
