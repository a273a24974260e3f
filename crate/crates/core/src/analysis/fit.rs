use serde::Serialize;

use crate::scalar::Real;
use crate::series::Series;

use super::AnalysisError;

/// Ordinary least squares line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    pub slope_stderr: T,
    pub r2: T,
}

/// `y ≈ slope · x + intercept`. With two points the slope error is infinite.
pub fn linear_fit<T: Real>(x: &[T], y: &[T]) -> Result<LinearFit<T>, AnalysisError> {
    let n = x.len();
    if n != y.len() {
        return Err(AnalysisError::InvalidSpec("x and y lengths differ".into()));
    }
    if n < 2 {
        return Err(AnalysisError::TooShort { points: n, needed: 2 });
    }
    let nf = T::from_count(n);
    let mx = x.iter().copied().sum::<T>() / nf;
    let my = y.iter().copied().sum::<T>() / nf;
    let sxx: T = x.iter().map(|&v| (v - mx) * (v - mx)).sum();
    let sxy: T = x.iter().zip(y).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let syy: T = y.iter().map(|&v| (v - my) * (v - my)).sum();
    if sxx <= T::zero() {
        return Err(AnalysisError::InvalidSpec("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: T = x.iter().zip(y).map(|(&a, &b)| (b - intercept - slope * a).powi(2)).sum();
    let slope_stderr = if n > 2 { (ssr / T::from_count(n - 2) / sxx).sqrt() } else { T::infinity() };
    let r2 = if syy > T::zero() { T::one() - ssr / syy } else { T::one() };
    Ok(LinearFit { slope, intercept, slope_stderr, r2 })
}

/// Which points of a series enter a fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Window {
    All,
    /// `t_from ≤ t ≤ t_to`.
    Time(f64, f64),
    /// `y_from ≤ mean ≤ y_to`.
    Value(f64, f64),
}

impl Window {
    fn select(&self, s: &Series) -> Vec<usize> {
        (0..s.len())
            .filter(|&i| match *self {
                Window::All => true,
                Window::Time(a, b) => s.times[i] >= a && s.times[i] <= b,
                Window::Value(a, b) => s.mean[i] >= a && s.mean[i] <= b,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub estimate: f64,
    pub stderr: f64,
    /// Time span of the points used.
    pub window: (f64, f64),
    pub r2: f64,
    pub points: usize,
}

fn log_fit(s: &Series, idx: &[usize], log_t: bool) -> Result<FitResult, AnalysisError> {
    if idx.len() < 2 {
        return Err(AnalysisError::TooShort { points: idx.len(), needed: 2 });
    }
    let mut x = Vec::with_capacity(idx.len());
    let mut y = Vec::with_capacity(idx.len());
    for &i in idx {
        let (t, v) = (s.times[i], s.mean[i]);
        if v <= 0.0 || (log_t && t <= 0.0) {
            return Err(AnalysisError::NonPositive { t, value: if v <= 0.0 { v } else { t } });
        }
        x.push(if log_t { t.ln() } else { t });
        y.push(v.ln());
    }
    let f = linear_fit(&x, &y)?;
    Ok(FitResult {
        estimate: f.slope,
        stderr: f.slope_stderr,
        window: (s.times[idx[0]], s.times[idx[idx.len() - 1]]),
        r2: f.r2,
        points: idx.len(),
    })
}

/// Slope of `ln(mean)` against `t`.
pub fn fit_exponential_rate(s: &Series, window: Window) -> Result<FitResult, AnalysisError> {
    log_fit(s, &window.select(s), false)
}

/// Slope of `ln(mean)` against `ln(t)`.
pub fn fit_power_law(s: &Series, window: Window) -> Result<FitResult, AnalysisError> {
    log_fit(s, &window.select(s), true)
}

/// Mean and standard error of the last `tail_fraction` of the points.
pub fn saturation_value(s: &Series, tail_fraction: f64) -> Result<FitResult, AnalysisError> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(AnalysisError::InvalidSpec(format!("tail fraction {tail_fraction}")));
    }
    let n = ((s.len() as f64) * tail_fraction).floor() as usize;
    if n < 10 {
        return Err(AnalysisError::TooShort { points: n, needed: 10 });
    }
    let tail = &s.mean[s.len() - n..];
    let mean = tail.iter().sum::<f64>() / n as f64;
    let var = tail.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(FitResult {
        estimate: mean,
        stderr: (var / n as f64).sqrt(),
        window: (s.times[s.len() - n], s.times[s.len() - 1]),
        r2: f64::NAN,
        points: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: impl Fn(f64) -> f64, ts: impl Iterator<Item = f64>) -> Series {
        let times: Vec<f64> = ts.collect();
        Series { mean: times.iter().map(|&t| f(t)).collect(), stderr: vec![0.0; times.len()], times }
    }

    #[test]
    fn planted_exponential_rate() {
        let l = 128.0;
        let s = series(|t| (8.0 * t / l).exp(), (0..200).map(f64::from));
        let f = fit_exponential_rate(&s, Window::Value(2.0, l / 20.0)).unwrap();
        assert!((f.estimate - 8.0 / l).abs() < 1e-10);
        assert!(f.stderr.is_finite() && f.stderr < 1e-10);
        assert!((f.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn planted_power_law() {
        let s = series(|t| 3.0 * t, (1..100).map(f64::from));
        let f = fit_power_law(&s, Window::Time(4.0, 50.0)).unwrap();
        assert!((f.estimate - 1.0).abs() < 1e-10);
        let r = series(|t| 0.7 * t.sqrt(), (1..100).map(f64::from));
        assert!((fit_power_law(&r, Window::All).unwrap().estimate - 0.5).abs() < 1e-10);
        let f32_fit = linear_fit(&[0.0f32, 1.0, 2.0], &[1.0f32, 3.0, 5.0]).unwrap();
        assert!((f32_fit.slope - 2.0).abs() < 1e-6);
    }

    #[test]
    fn errors() {
        let s = series(|t| t - 1.0, (0..20).map(f64::from));
        assert!(matches!(fit_exponential_rate(&s, Window::All), Err(AnalysisError::NonPositive { .. })));
        assert!(matches!(fit_power_law(&s, Window::Time(100.0, 200.0)), Err(AnalysisError::TooShort { .. })));
        assert!(matches!(saturation_value(&s, 0.2), Err(AnalysisError::TooShort { .. })));
    }

    #[test]
    fn saturation_of_constant() {
        let s = series(|_| 0.5, (0..100).map(f64::from));
        let f = saturation_value(&s, 0.25).unwrap();
        assert_eq!(f.estimate, 0.5);
        assert_eq!(f.stderr, 0.0);
        assert_eq!(f.points, 25);
    }
}
