use std::io::{self, Write};

use crate::ensemble;
use crate::rng::{stream_rng, StreamTag};
use crate::series::{write_series_csv, Series};

use super::{Lattice, SepConfig, SepError, SepVariant};

pub const SEP_CSV_HEADER: &str = "t,mean_size,stderr,L,trajectories,seed,variant";

/// Ensemble-averaged particle number with its run metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct SepSeries {
    pub series: Series,
    pub l: usize,
    pub trajectories: u64,
    pub seed: u64,
    pub variant: SepVariant,
}

impl SepSeries {
    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        let extra = format!("{},{},{},{}", self.l, self.trajectories, self.seed, self.variant);
        write_series_csv(w, SEP_CSV_HEADER, &self.series, &extra)
    }
}

fn tag(variant: SepVariant) -> StreamTag {
    match variant {
        SepVariant::Local => StreamTag::SepLocal,
        SepVariant::Nonlocal => StreamTag::SepNonlocal,
    }
}

/// Particle counts of trajectory `index` at every recorded period.
pub fn trajectory_counts(cfg: &SepConfig, index: u64) -> Result<Vec<u32>, SepError> {
    cfg.validate()?;
    let mut rng = stream_rng(cfg.seed, tag(cfg.variant), index);
    let mut lat = Lattice::init_single_particle(cfg.l, &mut rng)?;
    let p_b = cfg.p_b();
    let p_move = cfg.hop_probability();
    let mut scratch = Vec::with_capacity(cfg.l);
    let mut out = Vec::with_capacity((cfg.steps / cfg.record_every) as usize + 1);
    out.push(lat.count() as u32);
    for n in 1..=cfg.steps {
        lat.step_source(p_b, &mut rng);
        match cfg.variant {
            SepVariant::Local => lat.step_hop(p_move, &mut rng, &mut scratch),
            SepVariant::Nonlocal => lat.step_shuffle(&mut rng),
        }
        if n % cfg.record_every == 0 {
            out.push(lat.count() as u32);
        }
    }
    Ok(out)
}

fn times(cfg: &SepConfig) -> Vec<f64> {
    cfg.record_periods().iter().map(|&n| n as f64 * cfg.delta_t).collect()
}

/// A single trajectory as a series with zero error bars.
pub fn run_trajectory(cfg: &SepConfig, index: u64) -> Result<SepSeries, SepError> {
    let counts = trajectory_counts(cfg, index)?;
    Ok(SepSeries {
        series: Series {
            times: times(cfg),
            stderr: vec![0.0; counts.len()],
            mean: counts.into_iter().map(f64::from).collect(),
        },
        l: cfg.l,
        trajectories: 1,
        seed: cfg.seed,
        variant: cfg.variant,
    })
}

/// Mean and standard error over `cfg.trajectories` trajectories; identical
/// for any rayon thread count.
pub fn run_ensemble(cfg: &SepConfig) -> Result<SepSeries, SepError> {
    cfg.validate()?;
    let len = cfg.record_periods().len();
    let m = ensemble::collect(cfg.trajectories, len, |i| {
        trajectory_counts(cfg, i).expect("config validated")
    });
    Ok(SepSeries {
        series: Series { times: times(cfg), mean: m.mean(), stderr: m.stderr() },
        l: cfg.l,
        trajectories: cfg.trajectories,
        seed: cfg.seed,
        variant: cfg.variant,
    })
}
