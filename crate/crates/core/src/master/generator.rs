use crate::scalar::Real;

use super::{check_rate, check_sites, MasterError, RateOperator};

/// Four-body coupling `B_ijkl` on sites `i < j < k < l` (0-based).
pub type FourBody<T> = ([usize; 4], T);

/// Sparse generator over the `2^L` height vectors; bit `i` of a state index
/// is the height on site `i`.
///
/// Every transition used here is its own reverse at the same rate, so the
/// incoming rows double as outgoing lists.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightGenerator<T> {
    l: usize,
    row_ptr: Vec<u32>,
    col: Vec<u32>,
    rate: Vec<T>,
    diag: Vec<T>,
}

impl<T: Real> HeightGenerator<T> {
    pub fn sites(&self) -> usize {
        self.l
    }

    /// Transition rate `from → to` (`to != from`), zero if not connected.
    pub fn rate(&self, from: usize, to: usize) -> T {
        let (lo, hi) = (self.row_ptr[to] as usize, self.row_ptr[to + 1] as usize);
        self.col[lo..hi]
            .iter()
            .position(|&c| c as usize == from)
            .map_or(T::zero(), |k| self.rate[lo + k])
    }

    pub fn diagonal(&self, state: usize) -> T {
        self.diag[state]
    }

    /// Off-diagonal entries `(to, from, rate)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.dim()).flat_map(move |to| {
            let (lo, hi) = (self.row_ptr[to] as usize, self.row_ptr[to + 1] as usize);
            (lo..hi).map(move |k| (to, self.col[k] as usize, self.rate[k]))
        })
    }

    /// `Σ_to G[to][from]` for every column.
    pub fn column_sums(&self) -> Vec<T> {
        let mut sums = self.diag.clone();
        for (_, from, r) in self.entries() {
            sums[from] += r;
        }
        sums
    }

    fn from_moves(l: usize, moves: &[(u32, T)]) -> Self {
        let dim = 1usize << l;
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col = Vec::new();
        let mut rate = Vec::new();
        let mut diag = vec![T::zero(); dim];
        row_ptr.push(0);
        for s in 0..dim {
            for &(mask, r) in moves {
                if (s as u32 & mask).count_ones() % 2 == 1 {
                    col.push(s as u32 ^ mask);
                    rate.push(r);
                    diag[s] -= r;
                }
            }
            row_ptr.push(col.len() as u32);
        }
        Self { l, row_ptr, col, rate, diag }
    }
}

impl<T: Real> RateOperator<T> for HeightGenerator<T> {
    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, f: &[T], out: &mut [T]) {
        for to in 0..self.diag.len() {
            let (lo, hi) = (self.row_ptr[to] as usize, self.row_ptr[to + 1] as usize);
            let mut acc = self.diag[to] * f[to];
            for k in lo..hi {
                acc += self.rate[k] * f[self.col[k] as usize];
            }
            out[to] = acc;
        }
    }

    fn max_exit_rate(&self) -> T {
        self.diag.iter().fold(T::zero(), |m, &d| m.max(-d))
    }

    fn size_of_index(&self, index: usize) -> usize {
        index.count_ones() as usize
    }
}

/// Nearest-neighbour exchange at rate `4A` on a periodic chain plus the
/// source on sites 0–3 at rate `4B`, gated by odd parity there.
pub fn build_local_generator<T: Real>(l: usize, a: T, b: T) -> Result<HeightGenerator<T>, MasterError> {
    check_sites(l)?;
    check_rate("A", a)?;
    check_rate("B", b)?;
    let four = T::lit(4.0);
    let mut moves = Vec::new();
    if a > T::zero() {
        for i in 0..l {
            moves.push(((1u32 << i) | (1u32 << ((i + 1) % l)), four * a));
        }
    }
    if b > T::zero() {
        moves.push((0xF, four * b));
    }
    Ok(HeightGenerator::from_moves(l, &moves))
}

/// Generic two-body couplings `A_ij` (symmetric, zero diagonal) and
/// four-body couplings `B_ijkl`.
pub fn build_generic_generator<T: Real>(
    l: usize,
    a: &[Vec<T>],
    b: &[FourBody<T>],
) -> Result<HeightGenerator<T>, MasterError> {
    check_sites(l)?;
    if a.len() != l || a.iter().any(|row| row.len() != l) {
        return Err(MasterError::ShapeMismatch(format!("A must be {l}x{l}")));
    }
    let four = T::lit(4.0);
    let mut moves = Vec::new();
    for i in 0..l {
        if a[i][i] != T::zero() {
            return Err(MasterError::ShapeMismatch(format!("A has a nonzero diagonal at {i}")));
        }
        for j in (i + 1)..l {
            if a[i][j] != a[j][i] {
                return Err(MasterError::ShapeMismatch(format!("A is not symmetric at ({i},{j})")));
            }
            check_rate("A", a[i][j])?;
            if a[i][j] > T::zero() {
                moves.push(((1u32 << i) | (1u32 << j), four * a[i][j]));
            }
        }
    }
    for &(sites, r) in b {
        if !(sites.windows(2).all(|w| w[0] < w[1]) && sites[3] < l) {
            return Err(MasterError::ShapeMismatch(format!("B sites {sites:?} must be increasing and below {l}")));
        }
        check_rate("B", r)?;
        if r > T::zero() {
            moves.push((sites.iter().fold(0u32, |m, &s| m | (1 << s)), four * r));
        }
    }
    Ok(HeightGenerator::from_moves(l, &moves))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(bits: &[usize]) -> usize {
        bits.iter().map(|&b| 1usize << b).sum()
    }

    #[test]
    fn local_hops_and_source() {
        let g = build_local_generator(5, 0.25f64, 0.25).unwrap();
        let from = idx(&[0]);
        assert_eq!(g.rate(from, idx(&[1])), 1.0);
        assert_eq!(g.rate(from, idx(&[4])), 1.0);
        assert_eq!(g.rate(from, idx(&[2])), 0.0);
        assert_eq!(g.rate(from, idx(&[1, 2, 3])), 1.0);
        assert_eq!(g.rate(idx(&[0, 1]), idx(&[2, 3])), 0.0);
        assert_eq!(g.diagonal(from), -3.0);
        assert!(g.column_sums().iter().all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn guards() {
        assert_eq!(build_local_generator(15, 1.0f64, 1.0), Err(MasterError::DimensionTooLarge { l: 15, max: 14 }));
        assert_eq!(build_local_generator(4, 1.0f64, 1.0), Err(MasterError::TooSmall { l: 4 }));
        let bad = vec![vec![0.0f64; 5]; 4];
        assert!(matches!(build_generic_generator(5, &bad, &[]), Err(MasterError::ShapeMismatch(_))));
        let a = vec![vec![0.0f64; 5]; 5];
        assert!(matches!(build_generic_generator(5, &a, &[([0, 2, 1, 3], 1.0)]), Err(MasterError::ShapeMismatch(_))));
    }

    #[test]
    fn all_to_all_single_particle() {
        let l = 6;
        let a: Vec<Vec<f64>> = (0..l).map(|i| (0..l).map(|j| if i == j { 0.0 } else { 0.5 }).collect()).collect();
        let g = build_generic_generator(l, &a, &[]).unwrap();
        for j in 1..l {
            assert_eq!(g.rate(1, 1 << j), 2.0);
        }
    }

    #[test]
    fn local_specialization_matches_generic() {
        let l = 8;
        let (av, bv) = (0.3f64, 0.7f64);
        let mut a = vec![vec![0.0; l]; l];
        for i in 0..l {
            let j = (i + 1) % l;
            a[i][j] = av;
            a[j][i] = av;
        }
        let generic = build_generic_generator(l, &a, &[([0, 1, 2, 3], bv)]).unwrap();
        let local = build_local_generator(l, av, bv).unwrap();
        for from in 0..(1 << l) {
            assert_eq!(generic.diagonal(from), local.diagonal(from));
        }
        for (to, from, r) in local.entries() {
            assert_eq!(generic.rate(from, to), r);
        }
        assert_eq!(generic.entries().count(), local.entries().count());
    }
}
