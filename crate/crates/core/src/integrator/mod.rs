//! Adaptive linearly implicit time integration.
//!
//! Two-stage Rosenbrock-W method (order 2, `gamma = 1 + 1/sqrt 2`) with an
//! embedded first-order solution for error control:
//!
//! ```text
//! W = I - gamma dt A
//! W k1 = F(y)
//! W k2 = F(y + dt k1) - 2 k1
//! y+  = y + 3/2 dt k1 + 1/2 dt k2,    err = 1/2 dt (k1 + k2)
//! ```
//!
//! `A` is whatever tridiagonal approximation of the Jacobian the system
//! offers (for the adhesion model: the diffusion operator). Being a
//! W-method, the order does not depend on how good that approximation is.

mod tridiag;

pub use tridiag::Tridiagonal;

use crate::discretization::State;
use crate::error::{Error, Result};

/// A system `dy/dt = F(t, y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()>;
    /// Stiff linear part used to build `W`. `None` makes the scheme explicit.
    fn stiff_part(&self) -> Option<&Tridiagonal> {
        None
    }
}

impl<F> OdeSystem for (usize, F)
where
    F: Fn(f64, &[f64], &mut [f64]) -> Result<()>,
{
    fn dim(&self) -> usize {
        self.0
    }
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        (self.1)(t, y, dy)
    }
}

const GAMMA: f64 = 1.0 + std::f64::consts::FRAC_1_SQRT_2;

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub dt_init: f64,
    pub dt_max: f64,
    pub dt_min: f64,
    pub t_final: f64,
    /// Snapshot times, increasing, inside `[t0, t_final]`; hit exactly.
    pub output_times: Vec<f64>,
    /// Steps producing a value below this floor are rejected.
    pub positivity_floor: Option<f64>,
    pub max_steps: usize,
}

impl IntegratorConfig {
    /// Tolerances `1e-5` (absolute and relative) and `n_snapshots` uniform
    /// intervals over `[0, t_final]`, both ends included.
    pub fn new(t_final: f64, n_snapshots: usize) -> Self {
        let n = n_snapshots.max(1);
        Self {
            rel_tol: 1e-5,
            abs_tol: 1e-5,
            dt_init: 1e-6,
            dt_max: f64::INFINITY,
            dt_min: 1e-14,
            t_final,
            output_times: (0..=n).map(|k| t_final * k as f64 / n as f64).collect(),
            positivity_floor: Some(-1e-12),
            max_steps: 10_000_000,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self.abs_tol = tol;
        self
    }

    pub fn with_output_times(mut self, times: Vec<f64>) -> Self {
        self.output_times = times;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::invalid("tol", "tolerances must be positive"));
        }
        if !(self.dt_init > 0.0) || !(self.dt_max > 0.0) || !(self.dt_min > 0.0) {
            return Err(Error::invalid("dt", "step bounds must be positive"));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(Error::invalid("t_final", "final time must be finite and non-negative"));
        }
        if self.output_times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("output_times", "snapshot times must be non-decreasing"));
        }
        if self.output_times.iter().any(|&t| t < 0.0 || t > self.t_final) {
            return Err(Error::invalid("output_times", "snapshot times must lie in [0, t_final]"));
        }
        Ok(())
    }
}

/// Why a step was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    ErrorTooLarge,
    Negative,
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepResult {
    pub accepted: bool,
    pub dt_used: f64,
    pub dt_next: f64,
    pub error_estimate: f64,
    pub rejection: Option<Rejection>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub positivity_rejections: usize,
    pub rhs_evals: usize,
    pub linear_solves: usize,
}

/// Snapshots at the requested output times plus step statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct Integration {
    pub snapshots: Vec<State>,
    pub stats: RunStats,
}

/// Reusable buffers for [`step_adaptive`].
pub struct Workspace {
    f: Vec<f64>,
    k1: Vec<f64>,
    k2: Vec<f64>,
    stage: Vec<f64>,
    err: Vec<f64>,
}

impl Workspace {
    pub fn new(n: usize) -> Self {
        Self { f: vec![0.0; n], k1: vec![0.0; n], k2: vec![0.0; n], stage: vec![0.0; n], err: vec![0.0; n] }
    }
}

fn solve_w<S: OdeSystem + ?Sized>(system: &S, c: f64, b: &mut [f64], stats: &mut RunStats) {
    if let Some(a) = system.stiff_part() {
        a.solve_shifted(c, b);
        stats.linear_solves += 1;
    }
}

/// Attempts one step of size `dt_try`.
///
/// A rejected step returns the input state unchanged with `accepted = false`
/// and a reduced `dt_next`. A non-finite right-hand side is an error.
pub fn step_adaptive<S: OdeSystem + ?Sized>(
    system: &S,
    state: &State,
    dt_try: f64,
    config: &IntegratorConfig,
    ws: &mut Workspace,
    stats: &mut RunStats,
) -> Result<(State, StepResult)> {
    if !(dt_try > 0.0) {
        return Err(Error::invalid("dt", format!("step size must be positive, got {dt_try}")));
    }
    let n = system.dim();
    if state.u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: state.u.len() });
    }
    let (t, y, dt) = (state.t, &state.u, dt_try);
    let c = GAMMA * dt;
    let finite_or_fail = |v: &[f64], t: f64| -> Result<()> {
        match v.iter().position(|x| !x.is_finite()) {
            Some(i) => Err(Error::IntegrationFailure { t, reason: format!("non-finite right-hand side in component {i}") }),
            None => Ok(()),
        }
    };

    system.eval(t, y, &mut ws.f)?;
    stats.rhs_evals += 1;
    finite_or_fail(&ws.f, t)?;
    ws.k1.copy_from_slice(&ws.f);
    solve_w(system, c, &mut ws.k1, stats);

    for i in 0..n {
        ws.stage[i] = y[i] + dt * ws.k1[i];
    }
    let stage_ok = ws.stage.iter().all(|v| v.is_finite());
    if stage_ok {
        system.eval(t + dt, &ws.stage, &mut ws.f)?;
        stats.rhs_evals += 1;
    }
    let reject = |reason: Rejection, err: f64| StepResult {
        accepted: false,
        dt_used: dt,
        dt_next: dt * if reason == Rejection::ErrorTooLarge && err.is_finite() { (0.9 / err.sqrt()).clamp(0.1, 0.5) } else { 0.25 },
        error_estimate: err,
        rejection: Some(reason),
    };
    if !stage_ok || ws.f.iter().any(|v| !v.is_finite()) {
        // an overflowing stage means the step was far too large
        stats.rejected_steps += 1;
        return Ok((state.clone(), reject(Rejection::NonFinite, f64::INFINITY)));
    }
    for i in 0..n {
        ws.k2[i] = ws.f[i] - 2.0 * ws.k1[i];
    }
    solve_w(system, c, &mut ws.k2, stats);

    let mut new_u = vec![0.0; n];
    let mut sum = 0.0;
    for i in 0..n {
        new_u[i] = y[i] + dt * (1.5 * ws.k1[i] + 0.5 * ws.k2[i]);
        ws.err[i] = 0.5 * dt * (ws.k1[i] + ws.k2[i]);
        let scale = config.abs_tol + config.rel_tol * y[i].abs().max(new_u[i].abs());
        let e = ws.err[i] / scale;
        sum += e * e;
    }
    let err = (sum / n as f64).sqrt();
    if !err.is_finite() || new_u.iter().any(|v| !v.is_finite()) {
        stats.rejected_steps += 1;
        return Ok((state.clone(), reject(Rejection::NonFinite, f64::INFINITY)));
    }
    if err > 1.0 {
        stats.rejected_steps += 1;
        return Ok((state.clone(), reject(Rejection::ErrorTooLarge, err)));
    }
    if let Some(floor) = config.positivity_floor {
        if new_u.iter().any(|&v| v < floor) {
            stats.rejected_steps += 1;
            stats.positivity_rejections += 1;
            return Ok((state.clone(), reject(Rejection::Negative, err)));
        }
    }
    stats.accepted_steps += 1;
    let growth = if err == 0.0 { 5.0 } else { (0.9 / err.sqrt()).clamp(0.2, 5.0) };
    let next = State { t: t + dt, u: new_u, m0: state.m0 };
    Ok((
        next,
        StepResult { accepted: true, dt_used: dt, dt_next: (dt * growth).min(config.dt_max), error_estimate: err, rejection: None },
    ))
}

/// Integrates from `state0` to `config.t_final`, recording the state at each
/// output time.
pub fn integrate<S: OdeSystem + ?Sized>(system: &S, state0: &State, config: &IntegratorConfig) -> Result<Integration> {
    config.validate()?;
    let n = system.dim();
    if state0.u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: state0.u.len() });
    }
    let mut stats = RunStats::default();
    let mut ws = Workspace::new(n);
    let mut snapshots = Vec::with_capacity(config.output_times.len());
    let mut outputs = config.output_times.iter().copied().filter(|&t| t >= state0.t).peekable();
    while let Some(&t_out) = outputs.peek() {
        if t_out <= state0.t {
            snapshots.push(state0.clone());
            outputs.next();
        } else {
            break;
        }
    }

    let mut state = state0.clone();
    let mut dt = config.dt_init.min(config.dt_max);
    let t_end = config.t_final;
    while state.t < t_end {
        if stats.accepted_steps + stats.rejected_steps >= config.max_steps {
            return Err(Error::IntegrationFailure { t: state.t, reason: format!("step budget {} exhausted", config.max_steps) });
        }
        let target = outputs.peek().copied().unwrap_or(t_end).min(t_end);
        let remaining = target - state.t;
        // avoid a sliver step just before an output time
        let (dt_try, clipped) = if dt >= 0.99 * remaining { (remaining, true) } else { (dt, false) };
        let (next, res) = step_adaptive(system, &state, dt_try, config, &mut ws, &mut stats)?;
        if res.accepted {
            state = next;
            if clipped {
                state.t = target;
                while let Some(&t_out) = outputs.peek() {
                    if t_out <= state.t {
                        snapshots.push(state.clone());
                        outputs.next();
                    } else {
                        break;
                    }
                }
                // a shortened step says little about the natural step size
                dt = if res.dt_next >= dt_try { dt.max(res.dt_next) } else { res.dt_next };
            } else {
                dt = res.dt_next;
            }
        } else {
            dt = res.dt_next;
            if dt < config.dt_min {
                let why = match res.rejection {
                    Some(Rejection::Negative) => "negative densities persist",
                    Some(Rejection::NonFinite) => "solution became non-finite",
                    _ => "error test failed",
                };
                return Err(Error::IntegrationFailure { t: state.t, reason: format!("step size below {:e}: {why}", config.dt_min) });
            }
        }
    }
    Ok(Integration { snapshots, stats })
}
