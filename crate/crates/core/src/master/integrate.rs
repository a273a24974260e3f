use std::io::{self, Write};

use crate::majorana::NORMALIZATION_TOLERANCE;
use crate::scalar::Real;
use crate::series::Series;

use super::{MasterError, RateOperator};

pub const MASTER_CSV_HEADER: &str = "t,mean_size,method,L,A,B";
pub const SNAPSHOT_CSV_HEADER: &str = "h,probability";

/// A probability vector at a time.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionState<T> {
    pub prob: Vec<T>,
    pub time: T,
}

impl<T: Real> DistributionState<T> {
    pub fn new(prob: Vec<T>, time: T) -> Self {
        Self { prob, time }
    }

    /// All mass on `index` at time zero.
    pub fn delta(dim: usize, index: usize) -> Self {
        let mut prob = vec![T::zero(); dim];
        prob[index] = T::one();
        Self { prob, time: T::zero() }
    }

    /// Uniform over the height vectors of weight `w` on `l` sites.
    pub fn uniform_weight(l: usize, w: u32) -> Self {
        let dim = 1usize << l;
        let count = (0..dim).filter(|s| (*s as u32).count_ones() == w).count();
        let p = T::one() / T::from_count(count);
        let prob = (0..dim).map(|s| if (s as u32).count_ones() == w { p } else { T::zero() }).collect();
        Self { prob, time: T::zero() }
    }

    pub fn total(&self) -> T {
        self.prob.iter().copied().sum()
    }

    pub fn mean_size<G: RateOperator<T> + ?Sized>(&self, gen: &G) -> T {
        self.prob.iter().enumerate().map(|(i, &p)| p * T::from_count(gen.size_of_index(i))).sum()
    }

    /// Probability aggregated by operator size, index = size.
    pub fn by_size<G: RateOperator<T> + ?Sized>(&self, gen: &G, max_size: usize) -> Vec<T> {
        let mut out = vec![T::zero(); max_size + 1];
        for (i, &p) in self.prob.iter().enumerate() {
            out[gen.size_of_index(i)] += p;
        }
        out
    }

    /// `h,probability` rows with `h` the operator size of each state.
    pub fn write_snapshot_csv<W: Write, G: RateOperator<T> + ?Sized>(&self, mut w: W, gen: &G) -> io::Result<()> {
        writeln!(w, "{SNAPSHOT_CSV_HEADER}")?;
        let max = (0..self.prob.len()).map(|i| gen.size_of_index(i)).max().unwrap_or(0);
        for (h, p) in self.by_size(gen, max).into_iter().enumerate() {
            writeln!(w, "{h},{p}")?;
        }
        Ok(())
    }
}

/// States on the requested grid plus integration diagnostics.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub states: Vec<DistributionState<T>>,
    /// Largest `|Σf - 1|` removed by renormalization after any step.
    pub max_correction: f64,
    /// Internal step size used on the longest interval.
    pub max_step: f64,
    pub steps: u64,
}

/// Fixed-step classical RK4 with `dt ≤ fraction / max exit rate` and
/// renormalization after every step.
#[derive(Clone, Debug)]
pub struct Integrator {
    pub step_fraction: f64,
    /// Largest tolerated renormalization per step; `None` picks
    /// `max(1e-8, 64 ε)` for the scalar type.
    pub guard: Option<f64>,
}

impl Default for Integrator {
    fn default() -> Self {
        Self { step_fraction: 0.1, guard: None }
    }
}

impl Integrator {
    pub fn run<T: Real, G: RateOperator<T> + ?Sized>(
        &self,
        gen: &G,
        f0: &DistributionState<T>,
        t_grid: &[T],
    ) -> Result<Solution<T>, MasterError> {
        let n = gen.dim();
        if f0.prob.len() != n {
            return Err(MasterError::ShapeMismatch(format!("initial state has {} entries, generator {n}", f0.prob.len())));
        }
        let total = f0.total().to_f64_lossy();
        if !((total - 1.0).abs() <= NORMALIZATION_TOLERANCE) {
            return Err(MasterError::NotNormalized { total });
        }
        if t_grid.first().is_some_and(|&t0| t0 < f0.time) {
            return Err(MasterError::InvalidGrid("grid starts before the initial state".into()));
        }
        if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(MasterError::InvalidGrid("times must be strictly increasing".into()));
        }
        let bound = self.guard.unwrap_or_else(|| 1e-8f64.max(64.0 * T::epsilon().to_f64_lossy()));
        let rate = gen.max_exit_rate();
        let dt_max = if rate > T::zero() { T::lit(self.step_fraction) / rate } else { T::infinity() };

        let mut f = f0.prob.clone();
        let mut t = f0.time;
        let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
            (vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]);
        let half = T::lit(0.5);
        let sixth = T::one() / T::lit(6.0);
        let two = T::lit(2.0);
        let mut states = Vec::with_capacity(t_grid.len());
        let mut max_correction = 0.0f64;
        let mut max_step = 0.0f64;
        let mut steps = 0u64;
        for &target in t_grid {
            let span = target - t;
            if span > T::zero() {
                let m = if dt_max.is_finite() { (span / dt_max).ceil().to_usize().unwrap_or(1).max(1) } else { 1 };
                let h = span / T::from_count(m);
                max_step = max_step.max(h.to_f64_lossy());
                for _ in 0..m {
                    gen.apply(&f, &mut k1);
                    for i in 0..n {
                        tmp[i] = f[i] + half * h * k1[i];
                    }
                    gen.apply(&tmp, &mut k2);
                    for i in 0..n {
                        tmp[i] = f[i] + half * h * k2[i];
                    }
                    gen.apply(&tmp, &mut k3);
                    for i in 0..n {
                        tmp[i] = f[i] + h * k3[i];
                    }
                    gen.apply(&tmp, &mut k4);
                    for i in 0..n {
                        f[i] += h * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
                    }
                    t += h;
                    steps += 1;
                    let s: T = f.iter().copied().sum();
                    let correction = (s - T::one()).abs().to_f64_lossy();
                    max_correction = max_correction.max(correction);
                    if !(correction <= bound) {
                        return Err(MasterError::StiffnessGuard { time: t.to_f64_lossy(), correction, bound });
                    }
                    for v in f.iter_mut() {
                        *v /= s;
                    }
                }
            }
            t = target;
            states.push(DistributionState { prob: f.clone(), time: target });
        }
        Ok(Solution { states, max_correction, max_step, steps })
    }
}

/// Integrates `df/dt = G f` from `f0` and returns the state at every grid
/// time.
pub fn integrate<T: Real, G: RateOperator<T> + ?Sized>(
    gen: &G,
    f0: &DistributionState<T>,
    t_grid: &[T],
) -> Result<Vec<DistributionState<T>>, MasterError> {
    Integrator::default().run(gen, f0, t_grid).map(|s| s.states)
}

/// Mean operator size on the grid; error bars are zero.
pub fn exact_mean_series<T: Real, G: RateOperator<T> + ?Sized>(
    gen: &G,
    f0: &DistributionState<T>,
    t_grid: &[T],
) -> Result<Series, MasterError> {
    let states = integrate(gen, f0, t_grid)?;
    Ok(Series {
        times: t_grid.iter().map(|t| t.to_f64_lossy()).collect(),
        mean: states.iter().map(|s| s.mean_size(gen).to_f64_lossy()).collect(),
        stderr: vec![0.0; states.len()],
    })
}

/// Exact mean-size curve with run metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct MasterSeries {
    pub series: Series,
    pub method: String,
    pub l: usize,
    pub a: f64,
    pub b: f64,
}

impl MasterSeries {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{MASTER_CSV_HEADER}")?;
        for (t, m) in self.series.times.iter().zip(&self.series.mean) {
            writeln!(w, "{t},{m},{},{},{},{}", self.method, self.l, self.a, self.b)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_local_generator, build_size_generator, early_time_mean};
    use super::*;

    #[test]
    fn zero_generator_keeps_state() {
        let g = build_local_generator(6, 0.0f64, 0.0).unwrap();
        let f0 = DistributionState::delta(64, 5);
        let out = integrate(&g, &f0, &[0.0, 1.0, 7.5]).unwrap();
        assert!(out.iter().all(|s| s.prob == f0.prob));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = build_local_generator(5, 0.25f64, 0.25).unwrap();
        let bad = DistributionState::new(vec![0.5; 32], 0.0);
        assert!(matches!(integrate(&g, &bad, &[1.0]), Err(MasterError::NotNormalized { .. })));
        let f0 = DistributionState::delta(32, 1);
        assert!(matches!(integrate(&g, &f0, &[1.0, 1.0]), Err(MasterError::InvalidGrid(_))));
        let strict = Integrator { step_fraction: 0.1, guard: Some(0.0) };
        let res = strict.run(&g, &DistributionState::uniform_weight(5, 1), &[50.0]);
        // An exact zero bound trips on the first rounding error, or never.
        assert!(res.is_ok() || matches!(res, Err(MasterError::StiffnessGuard { .. })));
    }

    #[test]
    fn no_source_keeps_size_one() {
        let g = build_local_generator(8, 0.25f64, 0.0).unwrap();
        let s = exact_mean_series(&g, &DistributionState::delta(256, 1), &[0.0, 5.0, 20.0]).unwrap();
        assert!(s.mean.iter().all(|m| (m - 1.0).abs() < 1e-12));
    }

    #[test]
    fn size_ode_tracks_early_exponential() {
        let l = 512;
        let g = build_size_generator(l, 0.25f64).unwrap();
        let grid: Vec<f64> = (0..=8).map(|k| k as f64 * 8.0).collect();
        let s = exact_mean_series(&g, &DistributionState::delta(l, 0), &grid).unwrap();
        for (t, m) in grid.iter().zip(&s.mean) {
            let expect = early_time_mean(*t, l, 0.25);
            assert!((m / expect - 1.0).abs() < 0.05, "t={t}: {m} vs {expect}");
        }
    }

    #[test]
    fn f32_solver_runs() {
        let g = build_size_generator(32, 0.25f32).unwrap();
        let out = integrate(&g, &DistributionState::delta(32, 0), &[1.0f32, 4.0]).unwrap();
        assert!((out[1].total() - 1.0).abs() < 1e-5);
    }
}
