//! Single runs: initial data, integration, diagnostics and output files.

use crate::config::{ConfigError, RunConfig};
use crate::ic::{self, IcError};
use crate::output;
use adhesion_core::analysis::{self, CensusOptions, Diagnostics, PeakCensus, Topology};
use adhesion_core::discretization::LIMITER_NAME;
use adhesion_core::{assemble, integrate, AdhesionModel, IntegratorConfig, RunStats, State};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const TOLERANCE_NOTE: &str = "the single tolerance is applied as both rel_tol and abs_tol; \
     error norm is the weighted RMS with weights abs_tol + rel_tol * max(|u_old|, |u_new|)";
pub const INTEGRATOR_NAME: &str = "ROS2 Rosenbrock-W (gamma = 1 + 1/sqrt 2), diffusion Jacobian, embedded first-order error";

/// Window and tolerance for the steady-state check.
pub const STEADY_WINDOW: f64 = 1.0;
pub const STEADY_TOL: f64 = 1e-5;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    InitialCondition(#[from] IcError),
    #[error("setup failed: {0}")]
    Setup(adhesion_core::Error),
    #[error("{0}")]
    Integration(adhesion_core::Error),
    #[error("cannot write {path}: {error}")]
    Output { path: PathBuf, error: std::io::Error },
}

#[derive(Clone, Debug, Serialize)]
pub struct StepStats {
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub positivity_rejections: usize,
    pub rhs_evals: usize,
    pub linear_solves: usize,
}

impl From<RunStats> for StepStats {
    fn from(s: RunStats) -> Self {
        Self {
            accepted_steps: s.accepted_steps,
            rejected_steps: s.rejected_steps,
            positivity_rejections: s.positivity_rejections,
            rhs_evals: s.rhs_evals,
            linear_solves: s.linear_solves,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalDiagnostics {
    pub t: f64,
    pub mass: f64,
    pub l2_norm: f64,
    pub h1_seminorm: f64,
    pub max: f64,
    pub min: f64,
    pub left_value: f64,
    pub right_value: f64,
    pub finite: bool,
}

impl FinalDiagnostics {
    fn new(t: f64, d: &Diagnostics) -> Self {
        Self {
            t,
            mass: d.mass,
            l2_norm: d.l2_norm,
            h1_seminorm: d.h1_seminorm,
            max: d.max,
            min: d.min,
            left_value: d.left_value,
            right_value: d.right_value,
            finite: d.finite,
        }
    }
}

/// Extremes over all snapshots.
#[derive(Clone, Debug, Serialize)]
pub struct TrajectorySummary {
    pub snapshots: usize,
    pub max_relative_mass_drift: f64,
    pub min_value: f64,
    pub max_value: f64,
    pub max_l2_norm: f64,
    pub max_h1_seminorm: f64,
    pub all_finite: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSummary {
    pub interior_peaks: usize,
    pub locations: Vec<f64>,
    pub prominences: Vec<f64>,
    pub left_half_peak: bool,
    pub right_half_peak: bool,
}

impl From<&PeakCensus> for CensusSummary {
    fn from(c: &PeakCensus) -> Self {
        Self {
            interior_peaks: c.count,
            locations: c.locations.clone(),
            prominences: c.prominences.clone(),
            left_half_peak: c.left_wall.is_some(),
            right_half_peak: c.right_wall.is_some(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Method {
    pub integrator: &'static str,
    pub limiter: &'static str,
    pub tolerance: &'static str,
    pub rng: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub status: String,
    pub version: &'static str,
    pub config: RunConfig,
    pub method: Method,
    pub m0: f64,
    pub clipped_cells: usize,
    pub wall_clock_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StepStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_state: Option<FinalDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<TrajectorySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusSummary>,
    pub steady: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub settling_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A finished run held in memory.
#[derive(Debug)]
pub struct RunOutcome {
    pub manifest: RunManifest,
    pub model: AdhesionModel,
    pub snapshots: Vec<State>,
    pub census: PeakCensus,
}

impl RunOutcome {
    pub fn final_state(&self) -> &State {
        self.snapshots.last().expect("at least one snapshot")
    }
}

fn method() -> Method {
    Method { integrator: INTEGRATOR_NAME, limiter: LIMITER_NAME, tolerance: TOLERANCE_NOTE, rng: ic::RNG_NAME }
}

pub fn topology(config: &RunConfig) -> Topology {
    if config.bc == crate::config::BcKind::Periodic {
        Topology::Periodic
    } else {
        Topology::Bounded
    }
}

fn summarize(model: &AdhesionModel, snapshots: &[State], m0: f64, topo: Topology) -> TrajectorySummary {
    let h = model.grid().h();
    let mut s = TrajectorySummary {
        snapshots: snapshots.len(),
        max_relative_mass_drift: 0.0,
        min_value: f64::INFINITY,
        max_value: f64::NEG_INFINITY,
        max_l2_norm: 0.0,
        max_h1_seminorm: 0.0,
        all_finite: true,
    };
    for snap in snapshots {
        let d = analysis::diagnostics(&snap.u, h, topo);
        let drift = if m0 > 0.0 { (d.mass - m0).abs() / m0 } else { (d.mass - m0).abs() };
        s.max_relative_mass_drift = s.max_relative_mass_drift.max(drift);
        s.min_value = s.min_value.min(d.min);
        s.max_value = s.max_value.max(d.max);
        s.max_l2_norm = s.max_l2_norm.max(d.l2_norm);
        s.max_h1_seminorm = s.max_h1_seminorm.max(d.h1_seminorm);
        s.all_finite &= d.finite;
    }
    s
}

/// Runs `config` without touching the file system.
pub fn simulate(config: &RunConfig) -> Result<RunOutcome, RunError> {
    let started = Instant::now();
    config.validate()?;
    let mut resolved = config.clone();
    if config.bc.is_wall() {
        let (b0, bl) = config.betas();
        resolved.beta0 = Some(b0);
        resolved.beta_l = Some(bl);
    }
    let config = &resolved;
    let alpha = config.alpha()?;
    let kernel = config.kernel().map_err(RunError::Setup)?;
    let domain = config.domain().map_err(RunError::Setup)?;
    let model = assemble(config.length, config.n_per_unit, &domain, &kernel, config.diffusion, alpha)
        .map_err(RunError::Setup)?;
    let init = ic::make_initial_condition(config)?;
    let mut icfg = IntegratorConfig::new(config.t_final, config.snapshots.max(1)).with_output_times(config.output_times());
    icfg.rel_tol = config.rel_tol;
    icfg.abs_tol = config.abs_tol;
    let m0 = init.state.m0;
    let run = integrate(&model, &init.state, &icfg).map_err(RunError::Integration)?;

    let topo = topology(config);
    let h = model.grid().h();
    let last = run.snapshots.last().expect("integrate returns the final time");
    let census = analysis::peak_census(&last.u, h, &CensusOptions::new(topo));
    let steady = analysis::detect_steady(&run.snapshots, STEADY_WINDOW, STEADY_TOL);
    let manifest = RunManifest {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        method: method(),
        m0,
        clipped_cells: init.clipped,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        stats: Some(run.stats.into()),
        final_state: Some(FinalDiagnostics::new(last.t, &analysis::diagnostics(&last.u, h, topo))),
        trajectory: Some(summarize(&model, &run.snapshots, m0, topo)),
        census: Some((&census).into()),
        steady: steady.steady,
        settling_time: steady.settling_time,
        error: None,
    };
    Ok(RunOutcome { manifest, model, snapshots: run.snapshots, census })
}

fn failure_manifest(config: &RunConfig, err: &RunError, seconds: f64) -> RunManifest {
    RunManifest {
        status: "failed".into(),
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        method: method(),
        m0: f64::NAN,
        clipped_cells: 0,
        wall_clock_seconds: seconds,
        stats: None,
        final_state: None,
        trajectory: None,
        census: None,
        steady: false,
        settling_time: None,
        error: Some(err.to_string()),
    }
}

fn write_manifest(dir: &Path, manifest: &RunManifest) -> Result<(), RunError> {
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    std::fs::write(&path, text + "\n").map_err(|error| RunError::Output { path, error })
}

/// Runs `config` and writes `profile.csv`, `kymograph.csv` and
/// `manifest.json` into `dir`. A failed run still writes its manifest.
pub fn run_to_dir(config: &RunConfig, dir: &Path) -> Result<RunOutcome, RunError> {
    std::fs::create_dir_all(dir).map_err(|error| RunError::Output { path: dir.to_owned(), error })?;
    let started = Instant::now();
    let outcome = match simulate(config) {
        Ok(o) => o,
        Err(err) => {
            // best effort: the original error matters more than a write failure
            let _ = write_manifest(dir, &failure_manifest(config, &err, started.elapsed().as_secs_f64()));
            return Err(err);
        }
    };
    let grid = outcome.model.grid();
    let out = |name: &str| dir.join(name);
    output::write_profile(&out("profile.csv"), grid, &outcome.final_state().u)
        .map_err(|error| RunError::Output { path: out("profile.csv"), error })?;
    output::write_kymograph(&out("kymograph.csv"), grid, &outcome.snapshots)
        .map_err(|error| RunError::Output { path: out("kymograph.csv"), error })?;
    write_manifest(dir, &outcome.manifest)?;
    Ok(outcome)
}
