use std::fmt;
use std::str::FromStr;

use super::SepError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SepVariant {
    Local,
    Nonlocal,
}

impl SepVariant {
    pub fn name(self) -> &'static str {
        match self {
            SepVariant::Local => "local",
            SepVariant::Nonlocal => "nonlocal",
        }
    }
}

impl fmt::Display for SepVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SepVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "local" => Ok(SepVariant::Local),
            "nonlocal" => Ok(SepVariant::Nonlocal),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// Parameters of one ensemble run.
///
/// A period of length `delta_t` applies the source with probability
/// `p_B = 4 B δt`, then either the hop sweep or a reshuffle. In the hop sweep
/// every particle attempts a move with probability `min(1, 8 A δt)`, which is
/// the total rate `4A` to each neighbour of the height master equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SepConfig {
    pub l: usize,
    pub a: f64,
    pub b: f64,
    pub delta_t: f64,
    pub steps: u64,
    pub trajectories: u64,
    pub seed: u64,
    pub variant: SepVariant,
    /// Record every n-th period (1 records all).
    pub record_every: u64,
}

impl SepConfig {
    pub fn new(l: usize, a: f64, b: f64, variant: SepVariant) -> Self {
        Self { l, a, b, delta_t: 1.0, steps: 0, trajectories: 2000, seed: 0, variant, record_every: 1 }
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_delta_t(mut self, delta_t: f64) -> Self {
        self.delta_t = delta_t;
        self
    }

    pub fn with_trajectories(mut self, trajectories: u64) -> Self {
        self.trajectories = trajectories;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_record_every(mut self, every: u64) -> Self {
        self.record_every = every;
        self
    }

    /// `p_A = 4 A δt`.
    pub fn p_a(&self) -> f64 {
        4.0 * self.a * self.delta_t
    }

    /// `p_B = 4 B δt`.
    pub fn p_b(&self) -> f64 {
        4.0 * self.b * self.delta_t
    }

    /// Per-particle move attempt probability in one hop sweep.
    pub fn hop_probability(&self) -> f64 {
        (2.0 * self.p_a()).min(1.0)
    }

    pub fn validate(&self) -> Result<(), SepError> {
        if self.l < 5 {
            return Err(SepError::TooSmall { l: self.l });
        }
        for (field, v) in [("A", self.a), ("B", self.b)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(SepError::InvalidParameter { field, reason: format!("{v} must be a finite non-negative rate") });
            }
        }
        if !(self.delta_t > 0.0 && self.delta_t.is_finite()) {
            return Err(SepError::InvalidParameter { field: "delta_t", reason: format!("{} must be positive", self.delta_t) });
        }
        if self.p_a() > 1.0 {
            return Err(SepError::InvalidProbability { name: "p_A", value: self.p_a() });
        }
        if self.p_b() > 1.0 {
            return Err(SepError::InvalidProbability { name: "p_B", value: self.p_b() });
        }
        if self.trajectories == 0 {
            return Err(SepError::InvalidParameter { field: "trajectories", reason: "need at least one".into() });
        }
        if self.record_every == 0 {
            return Err(SepError::InvalidParameter { field: "record_every", reason: "must be positive".into() });
        }
        Ok(())
    }

    /// Periods at which a sample is taken, starting with 0.
    pub fn record_periods(&self) -> Vec<u64> {
        (0..=self.steps).step_by(self.record_every.max(1) as usize).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probabilities_are_checked() {
        let ok = SepConfig::new(8, 0.25, 0.25, SepVariant::Local);
        assert!(ok.validate().is_ok());
        assert_eq!(ok.hop_probability(), 1.0);
        let bad = SepConfig::new(8, 0.25, 0.5, SepVariant::Local);
        assert!(matches!(bad.validate(), Err(SepError::InvalidProbability { name: "p_B", .. })));
        let small = SepConfig::new(4, 0.25, 0.25, SepVariant::Local);
        assert_eq!(small.validate(), Err(SepError::TooSmall { l: 4 }));
        let half = ok.clone().with_delta_t(0.1);
        assert!((half.hop_probability() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn record_grid() {
        let c = SepConfig::new(8, 0.25, 0.25, SepVariant::Local).with_steps(10).with_record_every(4);
        assert_eq!(c.record_periods(), vec![0, 4, 8]);
    }
}
