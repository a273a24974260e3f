use crate::series::Series;

use super::AnalysisError;

/// Rescaling `t → t / L^z`, `y → y / L^alpha` and the comparison grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CollapseSpec {
    pub z: f64,
    pub alpha: f64,
    pub grid: usize,
    /// Part of the common rescaled domain used, as fractions `[from, to]`.
    pub window: (f64, f64),
}

impl CollapseSpec {
    pub fn new(z: f64, alpha: f64) -> Self {
        Self { z, alpha, grid: 64, window: (0.0, 1.0) }
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_window(mut self, from: f64, to: f64) -> Self {
        self.window = (from, to);
        self
    }
}

fn interpolate(x: &[f64], y: &[f64], at: f64) -> f64 {
    let k = x.partition_point(|&v| v < at);
    if k == 0 {
        return y[0];
    }
    if k >= x.len() {
        return y[x.len() - 1];
    }
    let (x0, x1) = (x[k - 1], x[k]);
    if x1 == x0 {
        return y[k];
    }
    y[k - 1] + (y[k] - y[k - 1]) * (at - x0) / (x1 - x0)
}

/// RMS spread of the rescaled curves around their pointwise mean on a
/// common grid, divided by the range of the mean curve.
pub fn collapse_error(curves: &[(usize, &Series)], spec: &CollapseSpec) -> Result<f64, AnalysisError> {
    if curves.len() < 2 {
        return Err(AnalysisError::InvalidSpec("need at least two system sizes".into()));
    }
    if spec.grid < 16 {
        return Err(AnalysisError::InvalidSpec(format!("grid of {} points, need at least 16", spec.grid)));
    }
    let (w0, w1) = spec.window;
    if !(0.0 <= w0 && w0 < w1 && w1 <= 1.0) {
        return Err(AnalysisError::InvalidSpec(format!("window ({w0}, {w1}) is not inside [0, 1]")));
    }
    let scaled: Vec<(Vec<f64>, Vec<f64>)> = curves
        .iter()
        .map(|(l, s)| {
            let l = *l as f64;
            let sx = l.powf(-spec.z);
            let sy = l.powf(-spec.alpha);
            (s.times.iter().map(|t| t * sx).collect(), s.mean.iter().map(|y| y * sy).collect())
        })
        .collect();
    if scaled.iter().any(|(x, _)| x.is_empty()) {
        return Err(AnalysisError::NoOverlap);
    }
    let lo = scaled.iter().map(|(x, _)| x[0]).fold(f64::NEG_INFINITY, f64::max);
    let hi = scaled.iter().map(|(x, _)| x[x.len() - 1]).fold(f64::INFINITY, f64::min);
    if !(hi > lo) {
        return Err(AnalysisError::NoOverlap);
    }
    let (a, b) = (lo + w0 * (hi - lo), lo + w1 * (hi - lo));
    let n = spec.grid;
    let grid: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    let values: Vec<Vec<f64>> = scaled.iter().map(|(x, y)| grid.iter().map(|&g| interpolate(x, y, g)).collect()).collect();
    let k = values.len() as f64;
    let mean: Vec<f64> = (0..n).map(|j| values.iter().map(|v| v[j]).sum::<f64>() / k).collect();
    let ss: f64 = values.iter().map(|v| v.iter().zip(&mean).map(|(y, m)| (y - m).powi(2)).sum::<f64>()).sum();
    let rms = (ss / (k * n as f64)).sqrt();
    let range = mean.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - mean.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(if rms == 0.0 {
        0.0
    } else if range > 0.0 {
        rms / range
    } else {
        f64::INFINITY
    })
}
