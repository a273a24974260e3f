use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::BitVec;
use crate::rng::bernoulli;

use super::{SepError, SOURCE_SITES};

/// Periodic chain with at most one particle per site. Sites are 0-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    occ: BitVec,
}

impl Lattice {
    pub fn empty(l: usize) -> Self {
        Self { occ: BitVec::zeros(l) }
    }

    pub fn from_sites(l: usize, sites: &[usize]) -> Self {
        Self { occ: BitVec::from_indices(l, sites.iter().copied()) }
    }

    /// One particle on a uniformly random site.
    pub fn init_single_particle<R: Rng + ?Sized>(l: usize, rng: &mut R) -> Result<Self, SepError> {
        if l < 5 {
            return Err(SepError::TooSmall { l });
        }
        let mut lat = Self::empty(l);
        lat.occ.set(rng.gen_range(0..l), true);
        Ok(lat)
    }

    pub fn len(&self) -> usize {
        self.occ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occ.is_empty()
    }

    pub fn occupied(&self, site: usize) -> bool {
        self.occ.get(site)
    }

    pub fn count(&self) -> usize {
        self.occ.count_ones()
    }

    pub fn bits(&self) -> &BitVec {
        &self.occ
    }

    pub fn sites(&self) -> Vec<usize> {
        self.occ.iter_ones().collect()
    }

    /// Complements sites 0..4 with probability `p_b` when they hold an odd
    /// number of particles. Returns whether the source fired.
    pub fn step_source<R: Rng + ?Sized>(&mut self, p_b: f64, rng: &mut R) -> bool {
        assert!(self.len() >= SOURCE_SITES, "source needs four sites");
        let w = &mut self.occ.words_mut()[0];
        if (*w & 0xF).count_ones() % 2 == 1 && bernoulli(rng, p_b) {
            *w ^= 0xF;
            true
        } else {
            false
        }
    }

    /// Hop sweep: particles in a fresh random order each attempt, with
    /// probability `p_move`, a move to a uniformly chosen neighbour; moves
    /// onto occupied sites are dropped.
    pub fn step_hop<R: Rng + ?Sized>(&mut self, p_move: f64, rng: &mut R, scratch: &mut Vec<usize>) {
        let l = self.len();
        scratch.clear();
        if p_move >= 1.0 {
            scratch.extend(self.occ.iter_ones());
        } else {
            for site in self.occ.iter_ones() {
                if bernoulli(rng, p_move) {
                    scratch.push(site);
                }
            }
        }
        if scratch.is_empty() {
            return;
        }
        scratch.shuffle(rng);
        let mut dirs = 0u64;
        for (k, &site) in scratch.iter().enumerate() {
            if k % 64 == 0 {
                dirs = rng.next_u64();
            }
            let right = (dirs >> (k % 64)) & 1 == 1;
            let target = if right { (site + 1) % l } else { (site + l - 1) % l };
            if !self.occ.get(target) {
                self.occ.set(site, false);
                self.occ.set(target, true);
            }
        }
    }

    /// Replaces the occupancy by a uniformly random pattern with the same
    /// particle number, i.e. applies a uniform permutation of the sites.
    pub fn step_shuffle<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let l = self.len();
        let n = self.count();
        let (k, fill) = if 2 * n <= l { (n, true) } else { (l - n, false) };
        let mut chosen = BitVec::zeros(l);
        // Floyd's subset sampling.
        for j in (l - k)..l {
            let t = rng.gen_range(0..=j);
            if chosen.get(t) {
                chosen.set(j, true);
            } else {
                chosen.set(t, true);
            }
        }
        if !fill {
            let mut all = BitVec::zeros(l);
            for i in 0..l {
                all.set(i, true);
            }
            chosen = all.xor(&chosen);
        }
        self.occ = chosen;
    }
}
