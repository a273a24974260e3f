use std::fmt;
use std::str::FromStr;

use crate::bits::{strict_suffix_parity, BitVec};

use super::{MajoranaError, Phase};

/// `q(q-1)/2 mod 4`, the exponent of the Hermitian prefactor of a weight-`q`
/// monomial.
#[inline]
pub(crate) fn hermitian_exponent(q: usize) -> i64 {
    ((q * q.saturating_sub(1) / 2) % 4) as i64
}

/// Parity of the number of pairs `(x, y)` with `x` in `a`, `y` in `b` and
/// `x > y`: the reordering sign of `γ_a γ_b`.
#[inline]
pub(crate) fn reorder_parity(a: &[u64], b: &[u64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut above = 0u32;
    let mut acc = 0u32;
    for k in (0..a.len()).rev() {
        let (wa, wb) = (a[k], b[k]);
        acc ^= above & wb.count_ones();
        acc ^= (strict_suffix_parity(wa) & wb).count_ones();
        above ^= wa.count_ones();
    }
    acc & 1 == 1
}

/// A product of Majorana operators over `M` modes with a phase.
///
/// The operator is `phase · B`, where `B = i^{q(q-1)/2} γ_{i1} γ_{i2} … γ_{iq}`
/// (`i1 < … < iq`) is the Hermitian basis element for the support. Hermitian
/// strings therefore carry a phase of `+1` or `-1`. Modes are 0-based here and
/// 1-based in the text form (`"+ g1 g2"`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MajoranaString {
    modes: BitVec,
    phase: Phase,
}

impl MajoranaString {
    pub fn new(modes: BitVec, phase: Phase) -> Self {
        Self { modes, phase }
    }

    pub fn identity(num_modes: usize) -> Self {
        Self { modes: BitVec::zeros(num_modes), phase: Phase::ONE }
    }

    /// The Hermitian basis element supported on `modes` (0-based).
    pub fn from_modes(num_modes: usize, modes: &[usize]) -> Self {
        Self { modes: BitVec::from_indices(num_modes, modes.iter().copied()), phase: Phase::ONE }
    }

    /// The single mode `γ_k` (0-based).
    pub fn gamma(num_modes: usize, k: usize) -> Self {
        Self::from_modes(num_modes, &[k])
    }

    /// The pair stabilizer `i γ_a γ_b` for `a < b` (0-based).
    pub fn pair(num_modes: usize, a: usize, b: usize) -> Self {
        assert!(a < b, "pair modes must be increasing");
        Self::from_modes(num_modes, &[a, b])
    }

    #[inline]
    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    #[inline]
    pub fn modes(&self) -> &BitVec {
        &self.modes
    }

    #[inline]
    pub(crate) fn modes_mut(&mut self) -> &mut BitVec {
        &mut self.modes
    }

    /// Overwrites the membership of modes 0–3 with the low bits of `mask`.
    #[inline]
    pub(crate) fn replace_low_modes(&mut self, mask: u8) {
        debug_assert!(self.num_modes() >= 4);
        let w = &mut self.modes.words_mut()[0];
        *w = (*w & !0xF) | (mask as u64 & 0xF);
    }

    #[inline]
    pub fn phase(&self) -> Phase {
        self.phase
    }

    #[inline]
    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    #[inline]
    pub(crate) fn mul_phase(&mut self, phase: Phase) {
        self.phase *= phase;
    }

    /// Number of Majorana operators in the product.
    #[inline]
    pub fn weight(&self) -> usize {
        self.modes.count_ones()
    }

    #[inline]
    pub fn contains(&self, mode: usize) -> bool {
        self.modes.get(mode)
    }

    pub fn is_identity(&self) -> bool {
        self.modes.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// Operator product `self · other`.
    pub fn multiply(&self, other: &MajoranaString) -> MajoranaString {
        assert_eq!(self.num_modes(), other.num_modes(), "mode count mismatch");
        let qa = self.weight();
        let qb = other.weight();
        let modes = self.modes.xor(&other.modes);
        let qc = modes.count_ones();
        let swaps = reorder_parity(self.modes.words(), other.modes.words());
        let k = self.phase.exponent() as i64
            + other.phase.exponent() as i64
            + hermitian_exponent(qa)
            + hermitian_exponent(qb)
            - hermitian_exponent(qc)
            + if swaps { 2 } else { 0 };
        MajoranaString { modes, phase: Phase::from_exponent(k) }
    }

    /// Whether the two operators commute (otherwise they anticommute).
    pub fn commutes_with(&self, other: &MajoranaString) -> bool {
        assert_eq!(self.num_modes(), other.num_modes(), "mode count mismatch");
        let overlap = self.modes.and_count(&other.modes);
        (self.weight() * other.weight() + overlap) % 2 == 0
    }
}

impl fmt::Display for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.token())?;
        for k in self.modes.iter_ones() {
            write!(f, " g{}", k + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MajoranaString({self}; M={})", self.num_modes())
    }
}

impl MajoranaString {
    /// Parses the text form with an explicit mode count, e.g. `"- g1 g4"`.
    pub fn parse(num_modes: usize, text: &str) -> Result<Self, MajoranaError> {
        let mut tokens = text.split_whitespace();
        let sign = tokens.next().ok_or_else(|| MajoranaError::Parse("empty string".into()))?;
        let phase = Phase::from_token(sign)
            .ok_or_else(|| MajoranaError::Parse(format!("bad sign token `{sign}`")))?;
        let mut modes = BitVec::zeros(num_modes);
        let mut last = 0usize;
        for tok in tokens {
            let k: usize = tok
                .strip_prefix('g')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| MajoranaError::Parse(format!("bad mode token `{tok}`")))?;
            if k == 0 || k > num_modes {
                return Err(MajoranaError::Parse(format!("mode g{k} outside 1..={num_modes}")));
            }
            if k <= last {
                return Err(MajoranaError::Parse("modes must be strictly increasing".into()));
            }
            last = k;
            modes.set(k - 1, true);
        }
        Ok(Self { modes, phase })
    }
}

/// Parses with the mode count set to the largest mode mentioned.
impl FromStr for MajoranaString {
    type Err = MajoranaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = s
            .split_whitespace()
            .skip(1)
            .filter_map(|t| t.strip_prefix('g').and_then(|d| d.parse::<usize>().ok()))
            .max()
            .unwrap_or(0);
        Self::parse(max, s)
    }
}
