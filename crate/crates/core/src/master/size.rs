use statrs::function::gamma::ln_gamma;

use crate::scalar::Real;

use super::{check_rate, MasterError, RateOperator};

fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Probability that exactly `i` of the four source sites are occupied when
/// `h` particles sit uniformly on `l` sites: `C(4,i) C(l-4,h-i) / C(l,h)`.
pub fn p_hi(l: usize, h: i64, i: i64) -> f64 {
    let (l, h_u) = (l as i64, h);
    if h_u < 0 || h_u > l || i < 0 || i > 4 || h_u - i < 0 || h_u - i > l - 4 {
        return 0.0;
    }
    let (l, h, i) = (l as u64, h as u64, i as u64);
    if l <= 64 {
        let num = binomial_u128(4, i) * binomial_u128(l - 4, h - i);
        num as f64 / binomial_u128(l, h) as f64
    } else {
        (ln_binomial(4, i) + ln_binomial(l - 4, h - i) - ln_binomial(l, h)).exp()
    }
}

/// Pentadiagonal generator of the size distribution over `h = 1..=L`.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeGenerator<T> {
    l: usize,
    /// `lower[k]` is the entry `(h, h-2)` for `h = k + 1`.
    lower: Vec<T>,
    diag: Vec<T>,
    /// `upper[k]` is the entry `(h, h+2)` for `h = k + 1`.
    upper: Vec<T>,
}

impl<T: Real> SizeGenerator<T> {
    pub fn sites(&self) -> usize {
        self.l
    }

    /// Entry at sizes `(row, col)`, both in `1..=L`.
    pub fn entry(&self, row: usize, col: usize) -> T {
        let k = row - 1;
        if col == row {
            self.diag[k]
        } else if col + 2 == row {
            self.lower[k]
        } else if col == row + 2 {
            self.upper[k]
        } else {
            T::zero()
        }
    }

    pub fn column_sums(&self) -> Vec<T> {
        (1..=self.l)
            .map(|c| {
                let lo = c.saturating_sub(2).max(1);
                let hi = (c + 2).min(self.l);
                (lo..=hi).map(|r| self.entry(r, c)).sum()
            })
            .collect()
    }
}

impl<T: Real> RateOperator<T> for SizeGenerator<T> {
    fn dim(&self) -> usize {
        self.l
    }

    fn apply(&self, f: &[T], out: &mut [T]) {
        let n = self.l;
        for k in 0..n {
            let mut acc = self.diag[k] * f[k];
            if k >= 2 {
                acc += self.lower[k] * f[k - 2];
            }
            if k + 2 < n {
                acc += self.upper[k] * f[k + 2];
            }
            out[k] = acc;
        }
    }

    fn max_exit_rate(&self) -> T {
        self.diag.iter().fold(T::zero(), |m, &d| m.max(-d))
    }

    fn size_of_index(&self, index: usize) -> usize {
        index + 1
    }
}

pub fn build_size_generator<T: Real>(l: usize, b: T) -> Result<SizeGenerator<T>, MasterError> {
    if l < 5 {
        return Err(MasterError::TooSmall { l });
    }
    check_rate("B", b)?;
    let four_b = T::lit(4.0) * b;
    let p = |h: i64, i: i64| T::lit(p_hi(l, h, i));
    let mut lower = Vec::with_capacity(l);
    let mut diag = Vec::with_capacity(l);
    let mut upper = Vec::with_capacity(l);
    for h in 1..=l as i64 {
        lower.push(four_b * p(h - 2, 1));
        diag.push(-four_b * (p(h, 1) + p(h, 3)));
        upper.push(four_b * p(h + 2, 3));
    }
    Ok(SizeGenerator { l, lower, diag, upper })
}

/// `exp(32 B t / L)`, the early-time mean size from a single particle.
pub fn early_time_mean<T: Real>(t: T, l: usize, b: T) -> T {
    (T::lit(32.0) * b * t / T::from_count(l)).exp()
}
