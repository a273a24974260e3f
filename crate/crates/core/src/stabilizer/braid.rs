//! Majorana braids and mode permutations.

use rand::Rng;

use crate::bits::BitVec;
use crate::majorana::{MajoranaString, Phase};

/// Even bit positions.
pub const EVEN_BITS: u64 = 0x5555_5555_5555_5555;
/// Odd bit positions.
pub const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// Conjugation by `exp(π/4 γ_a γ_b)`: `γ_a → γ_b`, `γ_b → -γ_a`.
pub fn apply_braid(s: &mut MajoranaString, a: usize, b: usize) {
    assert!(a != b, "braid needs two distinct modes");
    let (has_a, has_b) = (s.contains(a), s.contains(b));
    if has_a == has_b {
        return;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let between = s.modes().count_range(lo + 1, hi);
    let mut negate = between % 2 == 1;
    if has_b {
        negate = !negate;
    }
    let modes = s.modes_mut();
    modes.flip(a);
    modes.flip(b);
    s.mul_phase(Phase::sign(negate));
}

/// `γ_a → -γ_a`, every other mode fixed.
pub fn flip_mode_sign(s: &mut MajoranaString, a: usize) {
    if s.contains(a) {
        s.mul_phase(Phase::MINUS_ONE);
    }
}

/// Braids `(2i, 2i+1)` for every pair whose even bit is set in `masks`.
pub fn braid_layer_even(s: &mut MajoranaString, masks: &[u64]) {
    let mut negate = 0u32;
    let words = s.modes_mut().words_mut();
    for (w, &m) in words.iter_mut().zip(masks) {
        let m = m & EVEN_BITS;
        let a = *w & m;
        let b = (*w >> 1) & m;
        let x = a ^ b;
        negate ^= (b & !a).count_ones();
        *w ^= x | (x << 1);
    }
    s.mul_phase(Phase::sign(negate & 1 == 1));
}

/// Braids `(2i+1, 2i+2)` for every pair whose odd bit is set in `masks`.
/// The masks must not select the last mode, whose partner wraps around.
pub fn braid_layer_odd(s: &mut MajoranaString, masks: &[u64]) {
    let mut negate = 0u32;
    let words = s.modes_mut().words_mut();
    let n = words.len();
    for k in 0..n.min(masks.len()) {
        let m = masks[k] & ODD_BITS;
        if m == 0 {
            continue;
        }
        let next = if k + 1 < n { words[k + 1] } else { 0 };
        let w = words[k];
        let a = w & m;
        let b = ((w >> 1) | (next << 63)) & m;
        let x = a ^ b;
        negate ^= (b & !a).count_ones();
        words[k] ^= x | (x << 1);
        if k + 1 < n {
            words[k + 1] ^= x >> 63;
        }
    }
    s.mul_phase(Phase::sign(negate & 1 == 1));
}

/// Parity of the number of inversions of a sequence of distinct values
/// below `universe`.
pub fn inversion_parity(values: &[usize], universe: usize, seen: &mut Vec<bool>) -> bool {
    let set = BitVec::from_indices(universe, values.iter().copied());
    let words = set.words();
    let mut prefix = Vec::with_capacity(words.len());
    let mut acc = 0usize;
    for w in words {
        prefix.push(acc);
        acc += w.count_ones() as usize;
    }
    let rank = |v: usize| {
        let (k, off) = (v / 64, v % 64);
        prefix[k] + (words[k] & ((1u64 << off) - 1)).count_ones() as usize
    };
    let ranks: Vec<usize> = values.iter().map(|&v| rank(v)).collect();
    seen.clear();
    seen.resize(values.len(), false);
    let mut cycles = 0usize;
    for start in 0..ranks.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = ranks[j];
        }
    }
    (values.len() - cycles) % 2 == 1
}

/// Relabels `γ_k → γ_{perm[k]}`.
pub fn apply_permutation(s: &mut MajoranaString, perm: &[usize], seen: &mut Vec<bool>) {
    let m = s.num_modes();
    assert_eq!(perm.len(), m, "permutation length");
    let images: Vec<usize> = s.modes().iter_ones().map(|k| perm[k]).collect();
    let negate = inversion_parity(&images, m, seen);
    let modes = BitVec::from_indices(m, images.iter().copied());
    *s = MajoranaString::new(modes, s.phase() * Phase::sign(negate));
}

/// Applies a uniformly random permutation of all modes to a single string,
/// drawing images only for its support. `scratch` must hold the identity
/// permutation of the mode count and is restored on return.
pub fn apply_random_permutation<R: Rng + ?Sized>(
    s: &mut MajoranaString,
    rng: &mut R,
    scratch: &mut [usize],
    seen: &mut Vec<bool>,
) {
    let m = s.num_modes();
    debug_assert_eq!(scratch.len(), m);
    let support: Vec<usize> = s.modes().iter_ones().collect();
    let mut swaps = Vec::with_capacity(support.len());
    let mut images = Vec::with_capacity(support.len());
    for j in 0..support.len() {
        let r = rng.gen_range(j..m);
        scratch.swap(j, r);
        swaps.push(r);
        images.push(scratch[j]);
    }
    for (j, &r) in swaps.iter().enumerate().rev() {
        scratch.swap(j, r);
    }
    let negate = inversion_parity(&images, m, seen);
    let modes = BitVec::from_indices(m, images.iter().copied());
    *s = MajoranaString::new(modes, s.phase() * Phase::sign(negate));
}
