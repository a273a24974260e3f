//! Time series produced by the engines and their CSV forms.

use std::io::{self, Write};

/// Ensemble mean of an integer observable against time.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl Series {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Copy with both axes rescaled: `t → t·sx`, `y → y·sy`.
    pub fn scaled(&self, sx: f64, sy: f64) -> Series {
        Series {
            times: self.times.iter().map(|t| t * sx).collect(),
            mean: self.mean.iter().map(|y| y * sy).collect(),
            stderr: self.stderr.iter().map(|e| e * sy.abs()).collect(),
        }
    }
}

/// Writes `header` and one row per point; `extra` is appended verbatim to
/// every row after the three series columns.
pub fn write_series_csv<W: Write>(
    mut w: W,
    header: &str,
    series: &Series,
    extra: &str,
) -> io::Result<()> {
    writeln!(w, "{header}")?;
    for i in 0..series.len() {
        writeln!(w, "{},{},{},{}", series.times[i], series.mean[i], series.stderr[i], extra)?;
    }
    Ok(())
}
