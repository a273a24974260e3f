use crate::bits::BitVec;
use crate::scalar::Real;

use super::{MajoranaError, MajoranaString};

/// Probability mass allowed to go missing before a distribution counts as
/// unnormalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Binary occupation pattern of a basis operator, one bit per site.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HeightVector {
    bits: BitVec,
}

impl HeightVector {
    pub fn zeros(sites: usize) -> Self {
        Self { bits: BitVec::zeros(sites) }
    }

    pub fn from_bits(bits: BitVec) -> Self {
        Self { bits }
    }

    /// Sites given 0-based.
    pub fn from_sites(sites: usize, occupied: &[usize]) -> Self {
        Self { bits: BitVec::from_indices(sites, occupied.iter().copied()) }
    }

    /// Pattern from the low `sites` bits of an index (`sites <= 64`).
    pub fn from_index(sites: usize, index: u64) -> Self {
        Self { bits: BitVec::from_u64(sites, index) }
    }

    pub fn sites(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, site: usize) -> bool {
        self.bits.get(site)
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_odd(&self) -> bool {
        self.weight() % 2 == 1
    }
}

impl From<HeightVector> for BitVec {
    fn from(h: HeightVector) -> BitVec {
        h.bits
    }
}

pub fn height_of(s: &MajoranaString) -> HeightVector {
    HeightVector { bits: s.modes().clone() }
}

pub fn size_of(s: &MajoranaString) -> usize {
    s.weight()
}

/// `Σ f(h) |h|` over a normalized distribution.
pub fn mean_size<T: Real>(dist: &[(HeightVector, T)]) -> Result<T, MajoranaError> {
    let total: T = dist.iter().map(|(_, p)| *p).sum();
    let dev = (total - T::one()).abs().to_f64_lossy();
    if !(dev <= NORMALIZATION_TOLERANCE) {
        return Err(MajoranaError::NotNormalized { total: total.to_f64_lossy() });
    }
    Ok(dist.iter().map(|(h, p)| *p * T::from_count(h.weight())).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights_of_small_strings() {
        let id = MajoranaString::identity(6);
        assert_eq!(height_of(&id), HeightVector::zeros(6));
        assert_eq!(size_of(&id), 0);
        let g1 = MajoranaString::gamma(6, 0);
        assert_eq!(height_of(&g1), HeightVector::from_sites(6, &[0]));
        assert_eq!(size_of(&g1), 1);
        let p = MajoranaString::pair(6, 0, 1);
        assert_eq!(height_of(&p), HeightVector::from_sites(6, &[0, 1]));
        let four = MajoranaString::from_modes(6, &[0, 1, 2, 3]);
        assert_eq!(size_of(&four), 4);
    }

    #[test]
    fn mean_size_examples() {
        let one = HeightVector::from_sites(5, &[0]);
        let two = HeightVector::from_sites(5, &[0, 1]);
        assert_eq!(mean_size(&[(one.clone(), 1.0f64)]).unwrap(), 1.0);
        assert_eq!(mean_size(&[(one.clone(), 0.5f64), (two.clone(), 0.5)]).unwrap(), 1.5);
        assert_eq!(mean_size(&[(HeightVector::zeros(5), 1.0f32)]).unwrap(), 0.0);
        assert!(matches!(
            mean_size(&[(one, 0.5f64), (two, 0.4)]),
            Err(MajoranaError::NotNormalized { .. })
        ));
    }
}
