//! Experiment specs: TOML with `[engine]`, `[params]` and `[analysis]`.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use scramble_core::master::MAX_HEIGHT_SITES;
use scramble_core::stabilizer::{Embedding, GateSet, InitialOperator, Subsystem};

use crate::expr::Scaled;
use crate::SpecError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    SepLocal,
    SepNonlocal,
    MasterExact,
    MasterSize,
    Clifford1d,
    CliffordNonlocal,
    CliffordFloquet,
}

impl Engine {
    pub const ALL: [Engine; 7] = [
        Engine::SepLocal,
        Engine::SepNonlocal,
        Engine::MasterExact,
        Engine::MasterSize,
        Engine::Clifford1d,
        Engine::CliffordNonlocal,
        Engine::CliffordFloquet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::SepLocal => "sep-local",
            Engine::SepNonlocal => "sep-nonlocal",
            Engine::MasterExact => "master-exact",
            Engine::MasterSize => "master-size",
            Engine::Clifford1d => "clifford-1d",
            Engine::CliffordNonlocal => "clifford-nonlocal",
            Engine::CliffordFloquet => "clifford-floquet",
        }
    }

    fn is_clifford(self) -> bool {
        matches!(self, Engine::Clifford1d | Engine::CliffordNonlocal | Engine::CliffordFloquet)
    }

    fn is_master(self) -> bool {
        matches!(self, Engine::MasterExact | Engine::MasterSize)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine `{s}`, expected one of {}", Engine::ALL.map(|e| e.name()).join(", ")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    Size,
    Entropy,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Option<String>,
    figure: Option<String>,
    description: Option<String>,
    output: Option<String>,
    engine: RawEngine,
    params: RawParams,
    #[serde(default)]
    analysis: RawAnalysis,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEngine {
    kind: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(rename = "L")]
    l: Option<Vec<usize>>,
    #[serde(rename = "A")]
    a: Option<f64>,
    #[serde(rename = "B")]
    b: Option<f64>,
    p: Option<f64>,
    delta_t: Option<f64>,
    periods: Option<Scaled>,
    horizon: Option<Scaled>,
    samples: Option<u64>,
    trajectories: Option<u64>,
    subsystem: Option<[usize; 2]>,
    seed: Option<u64>,
    observable: Option<String>,
    interaction: Option<bool>,
    embedding: Option<String>,
    gate_set: Option<String>,
    initial: Option<String>,
    compare_mc: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnalysis {
    collapse: Option<RawCollapse>,
    fit: Option<RawFit>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCollapse {
    z: f64,
    alpha: f64,
    grid: Option<usize>,
    window: Option<[f64; 2]>,
    compare_z: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFit {
    kind: String,
    time_scale: Option<i32>,
    value_scale: Option<i32>,
    window_value: Option<[Scaled; 2]>,
    window_time: Option<[Scaled; 2]>,
    tail: Option<f64>,
}

/// Parameters shared by all engines; which ones matter depends on the engine.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub sizes: Vec<usize>,
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub delta_t: f64,
    pub periods: Option<Scaled>,
    pub horizon: Option<Scaled>,
    pub samples: Option<u64>,
    pub trajectories: u64,
    pub subsystem: Option<(usize, usize)>,
    pub seed: u64,
    pub observable: Observable,
    pub interaction: bool,
    pub embedding: Option<Embedding>,
    pub gate_set: GateSet,
    pub initial: InitialOperator,
    pub compare_mc: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollapseAnalysis {
    pub z: f64,
    pub alpha: f64,
    pub grid: usize,
    pub window: (f64, f64),
    pub compare_z: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitKind {
    ExponentialRate,
    PowerLaw,
    Saturation,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitWindow {
    All,
    Value(Scaled, Scaled),
    Time(Scaled, Scaled),
    Tail(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitAnalysis {
    pub kind: FitKind,
    /// Times are divided by `L^time_scale` before fitting.
    pub time_scale: i32,
    /// Values are divided by `L^value_scale` before fitting.
    pub value_scale: i32,
    pub window: FitWindow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub figure: Option<String>,
    pub description: Option<String>,
    pub output: Option<String>,
    pub engine: Engine,
    pub params: Params,
    pub collapse: Option<CollapseAnalysis>,
    pub fit: Option<FitAnalysis>,
}

fn invalid(field: &str, reason: impl Into<String>) -> SpecError {
    SpecError::Invalid { field: field.to_string(), reason: reason.into() }
}

fn missing(field: &str) -> SpecError {
    SpecError::Missing { field: field.to_string() }
}

fn probability(field: &str, v: f64) -> Result<f64, SpecError> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(invalid(field, format!("{v} is outside [0, 1]")))
    }
}

fn rate(field: &str, v: f64) -> Result<f64, SpecError> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, format!("{v} must be a finite non-negative rate")))
    }
}

impl ExperimentSpec {
    /// Parses and validates. `fallback_name` names specs without a `name`
    /// key; `seed` overrides the spec's seed.
    pub fn parse(text: &str, fallback_name: &str, seed: Option<u64>) -> Result<Self, SpecError> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
        let engine: Engine = raw.engine.kind.parse().map_err(|e: String| invalid("engine.kind", e))?;
        let p = raw.params;
        let seed = seed.or(p.seed).ok_or_else(|| missing("seed"))?;
        let sizes = p.l.ok_or_else(|| missing("L"))?;
        if sizes.is_empty() {
            return Err(invalid("L", "needs at least one system size"));
        }
        let need = |v: Option<f64>, field: &str| v.ok_or_else(|| missing(field));

        let a = match engine {
            Engine::SepLocal | Engine::MasterExact => rate("A", need(p.a, "A")?)?,
            _ => rate("A", p.a.unwrap_or(0.0))?,
        };
        let b = match engine {
            Engine::SepLocal | Engine::SepNonlocal | Engine::MasterExact | Engine::MasterSize => rate("B", need(p.b, "B")?)?,
            _ => rate("B", p.b.unwrap_or(0.0))?,
        };
        let delta_t = p.delta_t.unwrap_or(1.0);
        if !(delta_t > 0.0 && delta_t.is_finite()) {
            return Err(invalid("delta_t", format!("{delta_t} must be positive")));
        }
        if engine.is_master() {
            p.horizon.as_ref().ok_or_else(|| missing("horizon"))?.check().map_err(|e| invalid("horizon", e))?;
        } else {
            p.periods.as_ref().ok_or_else(|| missing("periods"))?.check().map_err(|e| invalid("periods", e))?;
        }
        for &l in &sizes {
            match engine {
                Engine::MasterExact if !(5..=MAX_HEIGHT_SITES).contains(&l) => {
                    return Err(invalid("L", format!("{l} is outside 5..={MAX_HEIGHT_SITES} for master-exact")));
                }
                _ if engine.is_clifford() && l < 2 => return Err(invalid("L", format!("{l} is below 2"))),
                _ if !engine.is_clifford() && l < 5 => return Err(invalid("L", format!("{l} is below 5"))),
                _ => {}
            }
        }
        if matches!(engine, Engine::SepLocal | Engine::SepNonlocal) || p.compare_mc.unwrap_or(false) {
            probability("p_A = 4 A delta_t", 4.0 * a * delta_t)?;
            probability("p_B = 4 B delta_t", 4.0 * b * delta_t)?;
        }
        if p.samples == Some(0) {
            return Err(invalid("samples", "must be positive"));
        }
        let trajectories = p.trajectories.unwrap_or(2000);
        if trajectories == 0 {
            return Err(invalid("trajectories", "must be positive"));
        }
        let observable = match p.observable.as_deref() {
            None | Some("size") => Observable::Size,
            Some("entropy") => Observable::Entropy,
            Some(o) => return Err(invalid("observable", format!("`{o}` is not `size` or `entropy`"))),
        };
        if observable == Observable::Entropy && !engine.is_clifford() {
            return Err(invalid("observable", "entropy needs a clifford engine"));
        }
        let subsystem = match p.subsystem {
            None => None,
            Some([lo, hi]) => {
                for &l in &sizes {
                    Subsystem::new(lo, hi, l).map_err(|e| invalid("subsystem", e.to_string()))?;
                }
                Some((lo, hi))
            }
        };
        let embedding = match p.embedding.as_deref() {
            None => None,
            Some("jordan-wigner") => Some(Embedding::JordanWigner),
            Some("mode-local") => Some(Embedding::ModeLocal),
            Some(e) => return Err(invalid("embedding", format!("`{e}` is not `jordan-wigner` or `mode-local`"))),
        };
        let gate_set = match p.gate_set.as_deref() {
            None | Some("uniform") => GateSet::Uniform,
            Some("parity-preserving") => GateSet::ParityPreserving,
            Some(g) => return Err(invalid("gate_set", format!("`{g}` is not `uniform` or `parity-preserving`"))),
        };
        let initial = match p.initial.as_deref() {
            None | Some("pair") => InitialOperator::Pair,
            Some("single") => InitialOperator::SingleMajorana,
            Some(i) => return Err(invalid("initial", format!("`{i}` is not `pair` or `single`"))),
        };
        let compare_mc = p.compare_mc.unwrap_or(false);
        if compare_mc && !engine.is_master() {
            return Err(invalid("compare_mc", "only master engines compare against Monte Carlo"));
        }
        let params = Params {
            sizes,
            a,
            b,
            p: probability("p", p.p.unwrap_or(0.5))?,
            delta_t,
            periods: p.periods,
            horizon: p.horizon,
            samples: p.samples,
            trajectories,
            subsystem,
            seed,
            observable,
            interaction: p.interaction.unwrap_or(true),
            embedding,
            gate_set,
            initial,
            compare_mc,
        };

        let collapse = match raw.analysis.collapse {
            None => None,
            Some(c) => {
                let grid = c.grid.unwrap_or(64);
                if grid < 16 {
                    return Err(invalid("analysis.collapse.grid", format!("{grid} is below 16")));
                }
                let [w0, w1] = c.window.unwrap_or([0.0, 1.0]);
                if !(0.0 <= w0 && w0 < w1 && w1 <= 1.0) {
                    return Err(invalid("analysis.collapse.window", "must satisfy 0 <= from < to <= 1"));
                }
                if params.sizes.len() < 2 {
                    return Err(invalid("analysis.collapse", "needs at least two system sizes"));
                }
                Some(CollapseAnalysis { z: c.z, alpha: c.alpha, grid, window: (w0, w1), compare_z: c.compare_z })
            }
        };
        let fit = match raw.analysis.fit {
            None => None,
            Some(f) => {
                let kind = match f.kind.as_str() {
                    "exponential-rate" => FitKind::ExponentialRate,
                    "power-law" => FitKind::PowerLaw,
                    "saturation" => FitKind::Saturation,
                    k => return Err(invalid("analysis.fit.kind", format!("unknown fit `{k}`"))),
                };
                let window = match (kind, f.window_value, f.window_time, f.tail) {
                    (FitKind::Saturation, None, None, tail) => {
                        let t = tail.unwrap_or(0.25);
                        if !(t > 0.0 && t <= 1.0) {
                            return Err(invalid("analysis.fit.tail", format!("{t} is outside (0, 1]")));
                        }
                        FitWindow::Tail(t)
                    }
                    (FitKind::Saturation, ..) => return Err(invalid("analysis.fit", "saturation takes only `tail`")),
                    (_, Some(_), Some(_), _) => {
                        return Err(invalid("analysis.fit", "give either window_value or window_time"))
                    }
                    (_, _, _, Some(_)) => return Err(invalid("analysis.fit.tail", "only for saturation fits")),
                    (_, Some([a, b]), None, None) => FitWindow::Value(a, b),
                    (_, None, Some([a, b]), None) => FitWindow::Time(a, b),
                    (FitKind::ExponentialRate, None, None, None) => {
                        FitWindow::Value(Scaled::Value(2.0), Scaled::Expr("L/20".into()))
                    }
                    (FitKind::PowerLaw, None, None, None) => {
                        FitWindow::Time(Scaled::Value(4.0), Scaled::Expr("L^2/100".into()))
                    }
                };
                if let FitWindow::Value(a, b) | FitWindow::Time(a, b) = &window {
                    a.check().map_err(|e| invalid("analysis.fit window", e))?;
                    b.check().map_err(|e| invalid("analysis.fit window", e))?;
                }
                Some(FitAnalysis { kind, time_scale: f.time_scale.unwrap_or(0), value_scale: f.value_scale.unwrap_or(0), window })
            }
        };
        Ok(ExperimentSpec {
            name: raw.name.unwrap_or_else(|| fallback_name.to_string()),
            figure: raw.figure,
            description: raw.description,
            output: raw.output,
            engine,
            params,
            collapse,
            fit,
        })
    }

    /// Periods (or Monte Carlo steps) for size `l`.
    pub fn periods(&self, l: usize) -> Result<u64, SpecError> {
        let v = match (&self.params.periods, &self.params.horizon) {
            (Some(p), _) => p.eval(l).map_err(|e| invalid("periods", e))?,
            (None, Some(h)) => h.eval(l).map_err(|e| invalid("horizon", e))? / self.params.delta_t,
            (None, None) => return Err(missing("periods")),
        };
        if !(v >= 1.0 && v.is_finite()) {
            return Err(invalid("periods", format!("{v} periods for L = {l}")));
        }
        Ok(v.round() as u64)
    }

    pub fn horizon(&self, l: usize) -> Result<f64, SpecError> {
        let h = self.params.horizon.as_ref().ok_or_else(|| missing("horizon"))?;
        let v = h.eval(l).map_err(|e| invalid("horizon", e))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid("horizon", format!("{v} for L = {l}")));
        }
        Ok(v)
    }

    /// Record interval giving about `samples` recorded points.
    pub fn record_every(&self, periods: u64) -> u64 {
        match self.params.samples {
            Some(s) => (periods / s).max(1),
            None => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
name = "t"
[engine]
kind = "sep-local"
[params]
L = [8, 16]
A = 0.25
B = 0.25
periods = "L^2/4"
seed = 3
"#;

    #[test]
    fn parses_defaults() {
        let s = ExperimentSpec::parse(BASE, "x", None).unwrap();
        assert_eq!(s.engine, Engine::SepLocal);
        assert_eq!(s.params.trajectories, 2000);
        assert_eq!(s.periods(16).unwrap(), 64);
        assert_eq!(s.params.seed, 3);
        assert_eq!(ExperimentSpec::parse(BASE, "x", Some(9)).unwrap().params.seed, 9);
    }

    #[test]
    fn names_the_bad_field() {
        let no_seed = BASE.replace("seed = 3", "");
        assert_eq!(ExperimentSpec::parse(&no_seed, "x", None), Err(SpecError::Missing { field: "seed".into() }));
        let bad = BASE.replace("A = 0.25", "A = 0.5");
        match ExperimentSpec::parse(&bad, "x", None) {
            Err(SpecError::Invalid { field, .. }) => assert!(field.starts_with("p_A")),
            other => panic!("{other:?}"),
        }
        let unknown = BASE.replace("seed = 3", "seed = 3\nsed = 4");
        match ExperimentSpec::parse(&unknown, "x", None) {
            Err(SpecError::Parse(msg)) => assert!(msg.contains("sed"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
