use crate::bits::{f2_rank, words_for, BitVec};
use crate::majorana::{pauli_bits, MajoranaString};

use super::braid::{apply_braid, apply_permutation, braid_layer_even, braid_layer_odd};
use super::clifford2::{Embedding, MonomialAction};
use super::StabilizerError;

/// Contiguous qubit interval, 1-based and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subsystem {
    pub lo: usize,
    pub hi: usize,
}

impl Subsystem {
    pub fn new(lo: usize, hi: usize, l: usize) -> Result<Self, StabilizerError> {
        if lo == 0 || lo > hi || hi > l {
            return Err(StabilizerError::InvalidSubsystem { lo, hi, l });
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Qubits `L/4 + 2 ..= 3L/4 + 1`: half the chain, centred away from the
    /// interaction on qubits 1–2.
    pub fn centered_half(l: usize) -> Result<Self, StabilizerError> {
        Self::new(l / 4 + 2, 3 * l / 4 + 1, l)
    }

    /// Qubits `1 ..= L/2`.
    pub fn first_half(l: usize) -> Result<Self, StabilizerError> {
        Self::new(1, l / 2, l)
    }
}

/// `L` commuting Majorana strings over `2L` modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    l: usize,
    rows: Vec<MajoranaString>,
}

impl StabilizerTableau {
    /// Generators `i γ_{2i} γ_{2i+1}` (0-based), all with sign `+1`.
    pub fn init_paired(l: usize) -> Result<Self, StabilizerError> {
        if l < 2 {
            return Err(StabilizerError::TooSmall { l });
        }
        let rows = (0..l).map(|i| MajoranaString::pair(2 * l, 2 * i, 2 * i + 1)).collect();
        Ok(Self { l, rows })
    }

    /// Checked construction from generators.
    pub fn from_rows(rows: Vec<MajoranaString>) -> Result<Self, StabilizerError> {
        let l = rows.len();
        if rows.iter().any(|r| r.num_modes() != 2 * l) {
            return Err(StabilizerError::InvalidTableau(format!("every row needs {} modes", 2 * l)));
        }
        let tab = Self { l, rows };
        if !tab.all_commute() {
            return Err(StabilizerError::InvalidTableau("generators do not commute".into()));
        }
        if tab.rank() != l {
            return Err(StabilizerError::InvalidTableau("generators are dependent".into()));
        }
        Ok(tab)
    }

    pub fn qubits(&self) -> usize {
        self.l
    }

    pub fn modes(&self) -> usize {
        2 * self.l
    }

    pub fn rows(&self) -> &[MajoranaString] {
        &self.rows
    }

    pub fn weights(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.weight()).collect()
    }

    /// Rank over F2 of the mode bits.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<u64>> = self.rows.iter().map(|r| r.modes().words().to_vec()).collect();
        f2_rank(&mut m, self.modes())
    }

    pub fn all_commute(&self) -> bool {
        (0..self.l).all(|i| (i + 1..self.l).all(|j| self.rows[i].commutes_with(&self.rows[j])))
    }

    pub fn apply_braid(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            apply_braid(r, a, b);
        }
    }

    pub fn braid_layer_even(&mut self, masks: &[u64]) {
        for r in &mut self.rows {
            braid_layer_even(r, masks);
        }
    }

    pub fn braid_layer_odd(&mut self, masks: &[u64]) {
        for r in &mut self.rows {
            braid_layer_odd(r, masks);
        }
    }

    pub fn apply_permutation(&mut self, perm: &[usize]) -> Result<(), StabilizerError> {
        check_permutation(perm, self.modes())?;
        let mut seen = Vec::new();
        for r in &mut self.rows {
            apply_permutation(r, perm, &mut seen);
        }
        Ok(())
    }

    pub fn apply_two_qubit(&mut self, action: &MonomialAction, embedding: Embedding) {
        for r in &mut self.rows {
            action.apply(r, embedding);
        }
    }

    /// Entropy in bits of the qubits in `sub`: the F2 rank of the generators
    /// restricted to those qubits minus their number.
    pub fn entanglement_entropy(&self, sub: Subsystem) -> Result<usize, StabilizerError> {
        if sub.hi > self.l {
            return Err(StabilizerError::InvalidSubsystem { lo: sub.lo, hi: sub.hi, l: self.l });
        }
        let (lo, hi) = (sub.lo - 1, sub.hi);
        let n = hi - lo;
        let cols = 2 * n;
        let mut m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let (x, z) = pauli_bits(r.modes());
                let mut row = vec![0u64; words_for(cols)];
                x.copy_range_into(lo, hi, &mut row, 0);
                z.copy_range_into(lo, hi, &mut row, n);
                row
            })
            .collect();
        Ok(f2_rank(&mut m, cols) - n)
    }
}

pub(crate) fn check_permutation(perm: &[usize], m: usize) -> Result<(), StabilizerError> {
    if perm.len() != m {
        return Err(StabilizerError::NotAPermutation);
    }
    let mut seen = BitVec::zeros(m);
    for &p in perm {
        if p >= m || seen.get(p) {
            return Err(StabilizerError::NotAPermutation);
        }
        seen.set(p, true);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paired_state() {
        let t = StabilizerTableau::init_paired(2).unwrap();
        assert_eq!(t.rows()[0].to_string(), "+ g1 g2");
        assert_eq!(t.rows()[1].to_string(), "+ g3 g4");
        assert_eq!(t.rank(), 2);
        assert!(t.all_commute());
        let big = StabilizerTableau::init_paired(1024).unwrap();
        assert_eq!(big.rank(), 1024);
        assert_eq!(big.entanglement_entropy(Subsystem::new(3, 700, 1024).unwrap()).unwrap(), 0);
        assert!(StabilizerTableau::init_paired(1).is_err());
    }

    #[test]
    fn straddling_pair_has_one_bit() {
        // iγ2γ3 (1-based) couples qubits 1 and 2; complete it with iγ1γ4.
        let rows = vec![
            MajoranaString::parse(4, "+ g2 g3").unwrap(),
            MajoranaString::parse(4, "+ g1 g4").unwrap(),
        ];
        let t = StabilizerTableau::from_rows(rows).unwrap();
        assert_eq!(t.entanglement_entropy(Subsystem::new(1, 1, 2).unwrap()).unwrap(), 1);
        assert_eq!(t.entanglement_entropy(Subsystem::new(1, 2, 2).unwrap()).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        let rows = vec![MajoranaString::parse(4, "+ g1").unwrap(), MajoranaString::parse(4, "+ g2").unwrap()];
        assert!(StabilizerTableau::from_rows(rows).is_err());
        let mut t = StabilizerTableau::init_paired(2).unwrap();
        assert_eq!(t.apply_permutation(&[0, 0, 1, 2]), Err(StabilizerError::NotAPermutation));
        assert!(Subsystem::new(0, 1, 4).is_err());
        assert!(Subsystem::new(2, 5, 4).is_err());
        assert_eq!(Subsystem::centered_half(8).unwrap(), Subsystem { lo: 4, hi: 7 });
    }
}
