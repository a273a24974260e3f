use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::bits::words_for;
use crate::ensemble;
use crate::majorana::MajoranaString;
use crate::rng::{bernoulli, bernoulli_word, stream_rng, StreamRng, StreamTag};
use crate::series::{write_series_csv, Series};

use super::braid::{
    apply_braid, apply_random_permutation, braid_layer_even, braid_layer_odd, EVEN_BITS, ODD_BITS,
};
use super::clifford2::{Embedding, GateSet, TwoQubitClifford};
use super::tableau::{StabilizerTableau, Subsystem};
use super::StabilizerError;

pub const SIZE_CSV_HEADER: &str = "t,mean_size,stderr,L,variant,p,seed";
pub const EE_CSV_HEADER: &str = "t,mean_ee,stderr,L,variant,subsys_lo,subsys_hi,seed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircuitVariant {
    /// Two-qubit gate on qubits 1–2, then two brick layers of random braids.
    LocalRandom,
    /// Two-qubit gate on qubits 1–2, then a uniform permutation of all modes.
    Nonlocal,
    /// Both brick layers applied with probability one.
    Floquet,
}

impl CircuitVariant {
    pub fn name(self) -> &'static str {
        match self {
            CircuitVariant::LocalRandom => "local-random",
            CircuitVariant::Nonlocal => "nonlocal",
            CircuitVariant::Floquet => "floquet",
        }
    }
}

impl fmt::Display for CircuitVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CircuitVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "local-random" => Ok(CircuitVariant::LocalRandom),
            "nonlocal" => Ok(CircuitVariant::Nonlocal),
            "floquet" => Ok(CircuitVariant::Floquet),
            other => Err(format!("unknown circuit variant `{other}`")),
        }
    }
}

/// Operator followed in the Heisenberg runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum InitialOperator {
    /// `i γ_{2i-1} γ_{2i}` on a uniformly random qubit.
    #[default]
    Pair,
    /// A single mode, uniformly random.
    SingleMajorana,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitConfig {
    pub l: usize,
    /// Braid probability per bond in the random brick layers.
    pub p: f64,
    pub periods: u64,
    pub variant: CircuitVariant,
    pub seed: u64,
    pub interaction: bool,
    /// Entropy region; `None` picks the variant's default.
    pub subsystem: Option<Subsystem>,
    pub trajectories: u64,
    pub record_every: u64,
    /// Gate embedding; `None` picks mode-local for operator size and
    /// Jordan–Wigner for entropy.
    pub embedding: Option<Embedding>,
    pub gate_set: GateSet,
    pub initial: InitialOperator,
}

impl CircuitConfig {
    pub fn new(l: usize, variant: CircuitVariant) -> Self {
        Self {
            l,
            p: 0.5,
            periods: 0,
            variant,
            seed: 0,
            interaction: true,
            subsystem: None,
            trajectories: 200,
            record_every: 1,
            embedding: None,
            gate_set: GateSet::Uniform,
            initial: InitialOperator::Pair,
        }
    }

    pub fn with_periods(mut self, periods: u64) -> Self {
        self.periods = periods;
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_interaction(mut self, on: bool) -> Self {
        self.interaction = on;
        self
    }

    pub fn with_trajectories(mut self, n: u64) -> Self {
        self.trajectories = n;
        self
    }

    pub fn with_record_every(mut self, every: u64) -> Self {
        self.record_every = every;
        self
    }

    pub fn with_subsystem(mut self, sub: Subsystem) -> Self {
        self.subsystem = Some(sub);
        self
    }

    pub fn with_embedding(mut self, embedding: Embedding) -> Self {
        self.embedding = Some(embedding);
        self
    }

    pub fn with_gate_set(mut self, set: GateSet) -> Self {
        self.gate_set = set;
        self
    }

    pub fn with_initial(mut self, initial: InitialOperator) -> Self {
        self.initial = initial;
        self
    }

    pub fn validate(&self) -> Result<(), StabilizerError> {
        if self.l < 2 {
            return Err(StabilizerError::TooSmall { l: self.l });
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(StabilizerError::InvalidProbability { p: self.p });
        }
        if let Some(sub) = self.subsystem {
            Subsystem::new(sub.lo, sub.hi, self.l)?;
        }
        if self.trajectories == 0 {
            return Err(StabilizerError::InvalidParameter { field: "trajectories", reason: "need at least one".into() });
        }
        if self.record_every == 0 {
            return Err(StabilizerError::InvalidParameter { field: "record_every", reason: "must be positive".into() });
        }
        Ok(())
    }

    pub fn subsystem_or_default(&self) -> Result<Subsystem, StabilizerError> {
        match (self.subsystem, self.variant) {
            (Some(s), _) => Ok(s),
            (None, CircuitVariant::Nonlocal) => Subsystem::first_half(self.l),
            (None, _) => Subsystem::centered_half(self.l),
        }
    }

    pub fn record_periods(&self) -> Vec<u64> {
        (0..=self.periods).step_by(self.record_every.max(1) as usize).collect()
    }

    /// Braid probability actually used by the brick layers.
    pub fn braid_probability(&self) -> f64 {
        match self.variant {
            CircuitVariant::Floquet => 1.0,
            _ => self.p,
        }
    }
}

/// Something a circuit period can act on: one string or a whole tableau.
pub trait CircuitTarget {
    fn apply_gate(&mut self, gate: &TwoQubitClifford, embedding: Embedding);
    fn braid_even(&mut self, masks: &[u64]);
    fn braid_odd(&mut self, masks: &[u64]);
    fn braid(&mut self, a: usize, b: usize);
    fn permute<R: Rng + ?Sized>(&mut self, rng: &mut R, scratch: &mut Scratch);
}

impl CircuitTarget for MajoranaString {
    fn apply_gate(&mut self, gate: &TwoQubitClifford, embedding: Embedding) {
        gate.monomial_table().apply(self, embedding);
    }

    fn braid_even(&mut self, masks: &[u64]) {
        braid_layer_even(self, masks);
    }

    fn braid_odd(&mut self, masks: &[u64]) {
        braid_layer_odd(self, masks);
    }

    fn braid(&mut self, a: usize, b: usize) {
        apply_braid(self, a, b);
    }

    fn permute<R: Rng + ?Sized>(&mut self, rng: &mut R, scratch: &mut Scratch) {
        apply_random_permutation(self, rng, &mut scratch.perm, &mut scratch.seen);
    }
}

impl CircuitTarget for StabilizerTableau {
    fn apply_gate(&mut self, gate: &TwoQubitClifford, embedding: Embedding) {
        self.apply_two_qubit(&gate.monomial_table(), embedding);
    }

    fn braid_even(&mut self, masks: &[u64]) {
        self.braid_layer_even(masks);
    }

    fn braid_odd(&mut self, masks: &[u64]) {
        self.braid_layer_odd(masks);
    }

    fn braid(&mut self, a: usize, b: usize) {
        self.apply_braid(a, b);
    }

    fn permute<R: Rng + ?Sized>(&mut self, rng: &mut R, scratch: &mut Scratch) {
        scratch.perm.shuffle(rng);
        self.apply_permutation(&scratch.perm).expect("shuffled identity is a permutation");
        for (i, v) in scratch.perm.iter_mut().enumerate() {
            *v = i;
        }
    }
}

/// Reusable buffers for one trajectory.
#[derive(Debug, Clone)]
pub struct Scratch {
    perm: Vec<usize>,
    seen: Vec<bool>,
    even: Vec<u64>,
    odd: Vec<u64>,
}

impl Scratch {
    pub fn new(modes: usize) -> Self {
        Self { perm: (0..modes).collect(), seen: Vec::new(), even: Vec::new(), odd: Vec::new() }
    }
}

/// One trajectory's circuit: configuration, random stream and buffers.
pub struct CircuitRun<'a> {
    cfg: &'a CircuitConfig,
    embedding: Embedding,
    rng: StreamRng,
    scratch: Scratch,
    valid: Vec<u64>,
}

impl<'a> CircuitRun<'a> {
    pub fn new(cfg: &'a CircuitConfig, embedding: Embedding, tag: StreamTag, index: u64) -> Self {
        let modes = 2 * cfg.l;
        let mut valid = vec![u64::MAX; words_for(modes)];
        let tail = modes % 64;
        if tail != 0 {
            *valid.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        Self { cfg, embedding, rng: stream_rng(cfg.seed, tag, index), scratch: Scratch::new(modes), valid }
    }

    pub fn rng(&mut self) -> &mut StreamRng {
        &mut self.rng
    }

    fn draw_word(&mut self, p: f64) -> u64 {
        if p == 0.5 {
            self.rng.next_u64()
        } else {
            bernoulli_word(&mut self.rng, p)
        }
    }

    /// One period applied to `target`.
    pub fn evolve_period<T: CircuitTarget>(&mut self, target: &mut T) {
        let cfg = self.cfg;
        if cfg.interaction {
            let gate = TwoQubitClifford::sample(&mut self.rng, cfg.gate_set);
            target.apply_gate(&gate, self.embedding);
        }
        match cfg.variant {
            CircuitVariant::Nonlocal => target.permute(&mut self.rng, &mut self.scratch),
            CircuitVariant::LocalRandom | CircuitVariant::Floquet => {
                let p = cfg.braid_probability();
                let modes = 2 * cfg.l;
                let n = self.valid.len();
                let mut even = std::mem::take(&mut self.scratch.even);
                let mut odd = std::mem::take(&mut self.scratch.odd);
                even.clear();
                odd.clear();
                for k in 0..n {
                    let w = self.draw_word(p);
                    even.push(w & EVEN_BITS & self.valid[k]);
                }
                target.braid_even(&even);
                for k in 0..n {
                    let w = self.draw_word(p);
                    odd.push(w & ODD_BITS & self.valid[k]);
                }
                let last = modes - 1;
                odd[last / 64] &= !(1u64 << (last % 64));
                target.braid_odd(&odd);
                if bernoulli(&mut self.rng, p) {
                    target.braid(last, 0);
                }
                self.scratch.even = even;
                self.scratch.odd = odd;
            }
        }
    }
}

/// Mean of an integer observable per recorded period with run metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordSeries {
    pub series: Series,
    pub l: usize,
    pub variant: CircuitVariant,
    pub p: f64,
    pub seed: u64,
    pub subsystem: Option<Subsystem>,
    pub trajectories: u64,
}

impl CliffordSeries {
    /// Size CSV, or entropy CSV when a subsystem is attached.
    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        match self.subsystem {
            None => {
                let extra = format!("{},{},{},{}", self.l, self.variant, self.p, self.seed);
                write_series_csv(w, SIZE_CSV_HEADER, &self.series, &extra)
            }
            Some(sub) => {
                let extra = format!("{},{},{},{},{}", self.l, self.variant, sub.lo, sub.hi, self.seed);
                write_series_csv(w, EE_CSV_HEADER, &self.series, &extra)
            }
        }
    }
}

/// Weight of the evolved operator at every recorded period for one
/// trajectory.
pub fn size_trajectory(cfg: &CircuitConfig, index: u64) -> Result<Vec<u32>, StabilizerError> {
    cfg.validate()?;
    let embedding = cfg.embedding.unwrap_or(Embedding::ModeLocal);
    let mut run = CircuitRun::new(cfg, embedding, StreamTag::CliffordSize, index);
    let m = 2 * cfg.l;
    let mut s = match cfg.initial {
        InitialOperator::Pair => {
            let i = run.rng().gen_range(0..cfg.l);
            MajoranaString::pair(m, 2 * i, 2 * i + 1)
        }
        InitialOperator::SingleMajorana => MajoranaString::gamma(m, run.rng().gen_range(0..m)),
    };
    let mut out = vec![s.weight() as u32];
    for n in 1..=cfg.periods {
        run.evolve_period(&mut s);
        if n % cfg.record_every == 0 {
            out.push(s.weight() as u32);
        }
    }
    Ok(out)
}

/// Entropy of the configured subsystem at every recorded period for one
/// trajectory, starting from the paired state.
pub fn ee_trajectory(cfg: &CircuitConfig, index: u64) -> Result<Vec<u32>, StabilizerError> {
    cfg.validate()?;
    let sub = cfg.subsystem_or_default()?;
    let embedding = cfg.embedding.unwrap_or(Embedding::JordanWigner);
    let mut run = CircuitRun::new(cfg, embedding, StreamTag::CliffordEntropy, index);
    let mut tab = StabilizerTableau::init_paired(cfg.l)?;
    let mut out = vec![tab.entanglement_entropy(sub)? as u32];
    for n in 1..=cfg.periods {
        run.evolve_period(&mut tab);
        if n % cfg.record_every == 0 {
            out.push(tab.entanglement_entropy(sub)? as u32);
        }
    }
    Ok(out)
}

fn series_from(cfg: &CircuitConfig, m: &ensemble::Moments) -> Series {
    Series {
        times: cfg.record_periods().iter().map(|&n| n as f64).collect(),
        mean: m.mean(),
        stderr: m.stderr(),
    }
}

/// Ensemble-averaged operator size; bit-identical for any thread count.
pub fn heisenberg_size_series(cfg: &CircuitConfig) -> Result<CliffordSeries, StabilizerError> {
    cfg.validate()?;
    let len = cfg.record_periods().len();
    let m = ensemble::collect(cfg.trajectories, len, |i| size_trajectory(cfg, i).expect("config validated"));
    Ok(CliffordSeries {
        series: series_from(cfg, &m),
        l: cfg.l,
        variant: cfg.variant,
        p: cfg.braid_probability(),
        seed: cfg.seed,
        subsystem: None,
        trajectories: cfg.trajectories,
    })
}

/// Ensemble-averaged entanglement entropy of the configured subsystem.
pub fn ee_series(cfg: &CircuitConfig) -> Result<CliffordSeries, StabilizerError> {
    cfg.validate()?;
    let sub = cfg.subsystem_or_default()?;
    let len = cfg.record_periods().len();
    let m = ensemble::collect(cfg.trajectories, len, |i| ee_trajectory(cfg, i).expect("config validated"));
    Ok(CliffordSeries {
        series: series_from(cfg, &m),
        l: cfg.l,
        variant: cfg.variant,
        p: cfg.braid_probability(),
        seed: cfg.seed,
        subsystem: Some(sub),
        trajectories: cfg.trajectories,
    })
}
