//! Reproducible random streams.
//!
//! Every trajectory owns an independent ChaCha8 stream. The key is derived
//! from the master seed and an engine tag with SplitMix64 finalisation, and
//! the 64-bit ChaCha stream id is the trajectory index, so a trajectory draws
//! the same numbers no matter which thread runs it or in what order.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Engine tags keep the streams of different engines apart under one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamTag {
    SepLocal = 1,
    SepNonlocal = 2,
    CliffordSize = 3,
    CliffordEntropy = 4,
}

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn stream_rng(seed: u64, tag: StreamTag, index: u64) -> StreamRng {
    let key = splitmix64(seed ^ splitmix64(tag as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}

/// One Bernoulli(`p`) draw; `p <= 0` and `p >= 1` consume no randomness.
#[inline]
pub fn bernoulli<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    if p <= 0.0 {
        false
    } else if p >= 1.0 {
        true
    } else {
        rng.gen::<f64>() < p
    }
}

/// 64 independent Bernoulli bits with success probability `p` rounded to a
/// multiple of 2^-32.
///
/// The binary digits of `p` are consumed from least to most significant; a
/// one-digit ORs in a fresh random word, a zero-digit ANDs one in. `p = 1/2`
/// costs one word.
pub fn bernoulli_word<R: RngCore + ?Sized>(rng: &mut R, p: f64) -> u64 {
    if p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return u64::MAX;
    }
    let fixed = (p * 4_294_967_296.0).round() as u64;
    if fixed == 0 {
        return 0;
    }
    if fixed >= 1 << 32 {
        return u64::MAX;
    }
    let mut mask = 0u64;
    for bit in fixed.trailing_zeros()..32 {
        let r = rng.next_u64();
        mask = if (fixed >> bit) & 1 == 1 { mask | r } else { mask & r };
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |mut r: StreamRng| (0..4).map(|_| r.next_u64()).collect::<Vec<_>>();
        let a = draw(stream_rng(7, StreamTag::SepLocal, 3));
        assert_eq!(a, draw(stream_rng(7, StreamTag::SepLocal, 3)));
        let mut other = stream_rng(7, StreamTag::SepLocal, 4);
        assert_ne!(a[0], other.next_u64());
        let mut tagged = stream_rng(7, StreamTag::SepNonlocal, 3);
        assert_ne!(a[0], tagged.next_u64());
    }

    #[test]
    fn bernoulli_word_rate() {
        let mut rng = stream_rng(1, StreamTag::CliffordSize, 0);
        for &p in &[0.5, 0.25, 0.3, 0.9] {
            let n = 20_000;
            let ones: u64 = (0..n).map(|_| bernoulli_word(&mut rng, p).count_ones() as u64).sum();
            let total = (n * 64) as f64;
            let rate = ones as f64 / total;
            let sigma = (p * (1.0 - p) / total).sqrt();
            assert!((rate - p).abs() < 5.0 * sigma, "p={p} rate={rate}");
        }
        assert_eq!(bernoulli_word(&mut rng, 1.0), u64::MAX);
        assert_eq!(bernoulli_word(&mut rng, 0.0), 0);
    }
}
