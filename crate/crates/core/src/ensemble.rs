//! Deterministic ensemble averaging of integer-valued trajectories.
//!
//! Per-time sums are accumulated in integers, so the reduction is exact and
//! the result does not depend on how rayon splits the work.

use rayon::prelude::*;

/// Running integer moments of a set of equally long trajectories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub count: u64,
    pub sum: Vec<u64>,
    pub sum_sq: Vec<u128>,
}

impl Moments {
    pub fn new(len: usize) -> Self {
        Self { count: 0, sum: vec![0; len], sum_sq: vec![0; len] }
    }

    pub fn push(&mut self, values: &[u32]) {
        assert_eq!(values.len(), self.sum.len(), "trajectory length mismatch");
        self.count += 1;
        for ((s, q), &v) in self.sum.iter_mut().zip(self.sum_sq.iter_mut()).zip(values) {
            *s += v as u64;
            *q += (v as u128) * (v as u128);
        }
    }

    pub fn merge(mut self, other: Moments) -> Moments {
        if self.sum.is_empty() {
            return other;
        }
        if other.sum.is_empty() {
            return self;
        }
        self.count += other.count;
        for (a, b) in self.sum.iter_mut().zip(other.sum) {
            *a += b;
        }
        for (a, b) in self.sum_sq.iter_mut().zip(other.sum_sq) {
            *a += b;
        }
        self
    }

    pub fn mean(&self) -> Vec<f64> {
        let n = self.count as f64;
        self.sum.iter().map(|&s| s as f64 / n).collect()
    }

    /// Standard error of the mean from the unbiased sample variance; zero for
    /// a single trajectory.
    pub fn stderr(&self) -> Vec<f64> {
        let n = self.count;
        if n < 2 {
            return vec![0.0; self.sum.len()];
        }
        self.sum
            .iter()
            .zip(&self.sum_sq)
            .map(|(&s, &q)| {
                // n·Σx² − (Σx)² is exact in integers.
                let num = (n as u128) * q - (s as u128) * (s as u128);
                let var = num as f64 / (n as f64 * (n - 1) as f64);
                (var / n as f64).sqrt()
            })
            .collect()
    }
}

/// Runs `trajectories` independent trajectories of length `len` in parallel
/// and reduces them.
pub fn collect<F>(trajectories: u64, len: usize, run: F) -> Moments
where
    F: Fn(u64) -> Vec<u32> + Sync + Send,
{
    (0..trajectories)
        .into_par_iter()
        .fold(
            || Moments::new(len),
            |mut m, i| {
                m.push(&run(i));
                m
            },
        )
        .reduce(|| Moments::new(0), Moments::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_known_values() {
        let m = collect(4, 2, |i| vec![i as u32, 3]);
        assert_eq!(m.count, 4);
        assert_eq!(m.mean(), vec![1.5, 3.0]);
        let se = m.stderr();
        // var of {0,1,2,3} = 5/3
        assert!((se[0] - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(se[1], 0.0);
    }

    #[test]
    fn independent_of_thread_count() {
        let f = |i: u64| (0..50).map(|t| ((i * 2654435761 + t) % 97) as u32).collect::<Vec<_>>();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| collect(1000, 50, f));
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| collect(1000, 50, f));
        assert_eq!(one, four);
    }
}
