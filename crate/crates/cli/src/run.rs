//! Executes a spec: one CSV per system size, then the analysis report.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use scramble_core::analysis::{
    collapse_error, fit_exponential_rate, fit_power_law, saturation_value, AnalysisError, CollapseSpec, FitResult,
    Window,
};
use scramble_core::master::{
    build_local_generator, build_size_generator, exact_mean_series, DistributionState, MasterError, MasterSeries,
};
use scramble_core::sep::{run_ensemble, SepConfig, SepError, SepVariant};
use scramble_core::stabilizer::{
    ee_series, heisenberg_size_series, CircuitConfig, CircuitVariant, StabilizerError, Subsystem,
};
use scramble_core::Series;

use crate::spec::{Engine, ExperimentSpec, FitKind, FitWindow, Observable};
use crate::{CliError, SpecError};

pub const REPORT_FILE: &str = "fit_report.json";

/// One row of `fit_report.json`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportEntry {
    pub quantity: String,
    pub estimate: f64,
    pub stderr: Option<f64>,
    pub window: Option<[f64; 2]>,
    pub r2: Option<f64>,
    pub inputs: Vec<String>,
}

struct Curve {
    l: usize,
    series: Series,
    file: String,
}

fn spec_error(spec: &ExperimentSpec, error: SpecError) -> CliError {
    CliError::Spec { source_name: spec.name.clone(), error }
}

fn engine_error(spec: &ExperimentSpec, field: &str, reason: String) -> CliError {
    spec_error(spec, SpecError::Invalid { field: field.to_string(), reason })
}

fn sep_error(spec: &ExperimentSpec, e: SepError) -> CliError {
    engine_error(spec, "params", e.to_string())
}

fn stabilizer_error(spec: &ExperimentSpec, e: StabilizerError) -> CliError {
    engine_error(spec, "params", e.to_string())
}

fn master_error(spec: &ExperimentSpec, e: MasterError) -> CliError {
    match e {
        MasterError::StiffnessGuard { .. } => CliError::Guard(e.to_string()),
        other => engine_error(spec, "params", other.to_string()),
    }
}

fn analysis_error(e: AnalysisError) -> CliError {
    CliError::Guard(format!("analysis: {e}"))
}

fn write_file(dir: &Path, name: &str, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(dir.join(name))?);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

fn sep_config(spec: &ExperimentSpec, l: usize, variant: SepVariant, steps: u64) -> SepConfig {
    let p = &spec.params;
    SepConfig::new(l, p.a, p.b, variant)
        .with_delta_t(p.delta_t)
        .with_steps(steps)
        .with_record_every(spec.record_every(steps))
        .with_trajectories(p.trajectories)
        .with_seed(p.seed)
}

fn circuit_config(spec: &ExperimentSpec, l: usize) -> Result<CircuitConfig, CliError> {
    let p = &spec.params;
    let variant = match spec.engine {
        Engine::Clifford1d => CircuitVariant::LocalRandom,
        Engine::CliffordNonlocal => CircuitVariant::Nonlocal,
        _ => CircuitVariant::Floquet,
    };
    let periods = spec.periods(l).map_err(|e| spec_error(spec, e))?;
    let mut cfg = CircuitConfig::new(l, variant)
        .with_p(p.p)
        .with_periods(periods)
        .with_seed(p.seed)
        .with_interaction(p.interaction)
        .with_trajectories(p.trajectories)
        .with_record_every(spec.record_every(periods))
        .with_gate_set(p.gate_set)
        .with_initial(p.initial);
    if let Some((lo, hi)) = p.subsystem {
        cfg = cfg.with_subsystem(Subsystem::new(lo, hi, l).map_err(|e| stabilizer_error(spec, e))?);
    }
    if let Some(e) = p.embedding {
        cfg = cfg.with_embedding(e);
    }
    Ok(cfg)
}

/// Exact grid `k · horizon / samples` for `k = 1..=samples`.
fn master_grid(spec: &ExperimentSpec, l: usize) -> Result<Vec<f64>, CliError> {
    let horizon = spec.horizon(l).map_err(|e| spec_error(spec, e))?;
    let n = spec.params.samples.unwrap_or(100);
    Ok((1..=n).map(|k| k as f64 * horizon / n as f64).collect())
}

fn run_master(spec: &ExperimentSpec, l: usize, dir: &Path, report: &mut Vec<ReportEntry>) -> Result<Curve, CliError> {
    let p = &spec.params;
    let file = format!("{}_L{l}.csv", spec.name);
    let mc_file = format!("{}_L{l}_mc.csv", spec.name);
    let mc = if p.compare_mc {
        let variant = if spec.engine == Engine::MasterExact { SepVariant::Local } else { SepVariant::Nonlocal };
        let steps = spec.periods(l).map_err(|e| spec_error(spec, e))?;
        let out = run_ensemble(&sep_config(spec, l, variant, steps)).map_err(|e| sep_error(spec, e))?;
        write_file(dir, &mc_file, |w| out.write_csv(w))?;
        Some(out.series)
    } else {
        None
    };
    let grid = match &mc {
        Some(s) => s.times.iter().copied().filter(|&t| t > 0.0).collect(),
        None => master_grid(spec, l)?,
    };
    let (series, method) = match spec.engine {
        Engine::MasterExact => {
            let g = build_local_generator(l, p.a, p.b).map_err(|e| master_error(spec, e))?;
            let f0 = DistributionState::uniform_weight(l, 1);
            (exact_mean_series(&g, &f0, &grid).map_err(|e| master_error(spec, e))?, "height-exact")
        }
        _ => {
            let g = build_size_generator(l, p.b).map_err(|e| master_error(spec, e))?;
            let f0 = DistributionState::delta(l, 0);
            (exact_mean_series(&g, &f0, &grid).map_err(|e| master_error(spec, e))?, "size-equation")
        }
    };
    let out = MasterSeries { series, method: method.to_string(), l, a: p.a, b: p.b };
    write_file(dir, &file, |w| out.write_csv(w))?;
    if let Some(mc) = mc {
        let mut worst = 0.0f64;
        for (i, &t) in mc.times.iter().enumerate().filter(|(_, &t)| t > 0.0) {
            if let Some(k) = out.series.times.iter().position(|&u| u == t) {
                let se = mc.stderr[i];
                let d = (mc.mean[i] - out.series.mean[k]).abs();
                let z = if se > 0.0 { d / se } else if d == 0.0 { 0.0 } else { f64::INFINITY };
                worst = worst.max(z);
            }
        }
        report.push(ReportEntry {
            quantity: format!("max |mc - exact| / stderr, L = {l}"),
            estimate: worst,
            stderr: None,
            window: None,
            r2: None,
            inputs: vec![file.clone(), mc_file],
        });
    }
    Ok(Curve { l, series: out.series, file })
}

fn run_size(spec: &ExperimentSpec, l: usize, dir: &Path, report: &mut Vec<ReportEntry>) -> Result<Curve, CliError> {
    let file = format!("{}_L{l}.csv", spec.name);
    let series = match spec.engine {
        Engine::SepLocal | Engine::SepNonlocal => {
            let variant = if spec.engine == Engine::SepLocal { SepVariant::Local } else { SepVariant::Nonlocal };
            let steps = spec.periods(l).map_err(|e| spec_error(spec, e))?;
            let out = run_ensemble(&sep_config(spec, l, variant, steps)).map_err(|e| sep_error(spec, e))?;
            write_file(dir, &file, |w| out.write_csv(w))?;
            out.series
        }
        Engine::MasterExact | Engine::MasterSize => return run_master(spec, l, dir, report),
        _ => {
            let cfg = circuit_config(spec, l)?;
            let out = match spec.params.observable {
                Observable::Size => heisenberg_size_series(&cfg),
                Observable::Entropy => ee_series(&cfg),
            }
            .map_err(|e| stabilizer_error(spec, e))?;
            write_file(dir, &file, |w| out.write_csv(w))?;
            out.series
        }
    };
    Ok(Curve { l, series, file })
}

fn fit_entry(quantity: String, fit: FitResult, inputs: Vec<String>) -> ReportEntry {
    ReportEntry {
        quantity,
        estimate: fit.estimate,
        stderr: fit.stderr.is_finite().then_some(fit.stderr),
        window: Some([fit.window.0, fit.window.1]),
        r2: fit.r2.is_finite().then_some(fit.r2),
        inputs,
    }
}

fn analyse(spec: &ExperimentSpec, curves: &[Curve], report: &mut Vec<ReportEntry>) -> Result<(), CliError> {
    let inputs: Vec<String> = curves.iter().map(|c| c.file.clone()).collect();
    if let Some(c) = &spec.collapse {
        let pairs: Vec<(usize, &Series)> = curves.iter().map(|c| (c.l, &c.series)).collect();
        let mut zs = vec![c.z];
        zs.extend(c.compare_z);
        for z in zs {
            let cs = CollapseSpec::new(z, c.alpha).with_grid(c.grid).with_window(c.window.0, c.window.1);
            let err = collapse_error(&pairs, &cs).map_err(analysis_error)?;
            report.push(ReportEntry {
                quantity: format!("collapse error, z = {z}, alpha = {}", c.alpha),
                estimate: err,
                stderr: None,
                window: Some([c.window.0, c.window.1]),
                r2: None,
                inputs: inputs.clone(),
            });
        }
    }
    if let Some(f) = &spec.fit {
        for c in curves {
            let lf = c.l as f64;
            let scaled = c.series.scaled(lf.powi(-f.time_scale), lf.powi(-f.value_scale));
            let eval = |s: &crate::expr::Scaled| s.eval(c.l).map_err(|e| engine_error(spec, "analysis.fit window", e));
            let window = match &f.window {
                FitWindow::All => Window::All,
                FitWindow::Value(a, b) => Window::Value(eval(a)?, eval(b)?),
                FitWindow::Time(a, b) => Window::Time(eval(a)?, eval(b)?),
                FitWindow::Tail(_) => Window::All,
            };
            let (name, fit) = match (f.kind, &f.window) {
                (FitKind::ExponentialRate, _) => ("exponential rate", fit_exponential_rate(&scaled, window)),
                (FitKind::PowerLaw, _) => ("power-law exponent", fit_power_law(&scaled, window)),
                (FitKind::Saturation, FitWindow::Tail(t)) => ("saturation value", saturation_value(&scaled, *t)),
                (FitKind::Saturation, _) => ("saturation value", saturation_value(&scaled, 0.25)),
            };
            let fit = fit.map_err(analysis_error)?;
            report.push(fit_entry(format!("{name}, L = {}", c.l), fit, vec![c.file.clone()]));
        }
    }
    Ok(())
}

/// Runs every system size of `spec` into `dir` and writes the report.
/// Returns the files written, report last.
pub fn run(spec: &ExperimentSpec, dir: &Path) -> Result<(Vec<PathBuf>, Vec<ReportEntry>), CliError> {
    fs::create_dir_all(dir)?;
    let mut report = Vec::new();
    let mut curves = Vec::with_capacity(spec.params.sizes.len());
    let mut files = Vec::new();
    for &l in &spec.params.sizes {
        let curve = run_size(spec, l, dir, &mut report)?;
        files.push(dir.join(&curve.file));
        curves.push(curve);
    }
    analyse(spec, &curves, &mut report)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Guard(e.to_string()))?;
    fs::write(dir.join(REPORT_FILE), json + "\n")?;
    files.push(dir.join(REPORT_FILE));
    Ok((files, report))
}
