mod common;

use adhesion_core::integrator::{step_adaptive, Workspace};
use adhesion_core::*;
use common::*;
use std::f64::consts::PI;

fn heat_model(npu: usize) -> AdhesionModel {
    let kernel = InteractionKernel::uniform(R).unwrap();
    assemble(L, npu, &domain(BoundaryKind::NoFlux, 0.0), &kernel, 1.0, 0.0).unwrap()
}

fn cosine_start(grid: &Grid) -> State {
    let u = grid.centers().iter().map(|&x| 1.0 + 0.1 * (PI * x / L).cos()).collect();
    State::new(0.0, u, grid.h())
}

fn heat_solution(grid: &Grid, t: f64) -> Vec<f64> {
    let k = PI / L;
    grid.centers().iter().map(|&x| 1.0 + 0.1 * (-k * k * t).exp() * (k * x).cos()).collect()
}

fn run_heat(tol: f64) -> (Vec<f64>, RunStats) {
    let m = heat_model(128);
    let cfg = IntegratorConfig::new(1.0, 1).with_tolerance(tol);
    let out = integrate(&m, &cosine_start(m.grid()), &cfg).unwrap();
    (out.snapshots.last().unwrap().u.clone(), out.stats)
}

#[test]
fn heat_mode_decays_at_the_exact_rate() {
    let m = heat_model(128);
    let (u, _) = run_heat(1e-5);
    let s0 = cosine_start(m.grid());
    let k = PI / L;
    let centered = |v: &[f64]| -> f64 { v.iter().zip(m.grid().centers()).map(|(u, x)| (u - 1.0) * (k * x).cos()).sum() };
    let factor = centered(&u) / centered(&s0.u);
    let expected = (-k * k).exp();
    assert!((expected - 0.6738).abs() < 1e-4);
    assert!((factor / expected - 1.0).abs() <= 0.01, "factor {factor}");
}

#[test]
fn error_is_within_ten_tolerances() {
    let m = heat_model(128);
    let exact = heat_solution(m.grid(), 1.0);
    for tol in [1e-4, 1e-5, 1e-6] {
        let (u, _) = run_heat(tol);
        let err = u.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err <= 10.0 * tol, "tol {tol:e}: err {err:e}");
    }
}

#[test]
fn diffusion_at_paper_resolution_stays_within_step_budget() {
    let (_, stats) = run_heat(1e-5);
    assert!(stats.accepted_steps <= 10_000, "{stats:?}");
}

#[test]
fn tighter_tolerance_reduces_error() {
    let (reference, _) = run_heat(1e-11);
    let err = |tol: f64| {
        let (u, _) = run_heat(tol);
        u.iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    for tol in [1e-3, 1e-4, 1e-5] {
        let (coarse, fine) = (err(tol), err(tol / 2.0));
        assert!(coarse / fine >= 1.5, "tol {tol:e}: {coarse:e} vs {fine:e}");
    }
}

#[test]
fn diffusion_relaxes_to_the_mean() {
    let mut rng = rng(20);
    let m = heat_model(128);
    let u0 = random_field(&mut rng, m.grid().n_cells());
    let s0 = State::new(0.0, u0, m.grid().h());
    let out = integrate(&m, &s0, &IntegratorConfig::new(25.0, 25)).unwrap();
    let last = out.snapshots.last().unwrap();
    let mean = s0.m0 / L;
    assert!(last.u.iter().all(|v| (v - mean).abs() <= 1e-4));
}

#[test]
fn diffusion_run_settles_before_final_time() {
    let m = heat_model(128);
    let out = integrate(&m, &cosine_start(m.grid()), &IntegratorConfig::new(25.0, 250)).unwrap();
    let report = analysis::detect_steady(&out.snapshots, 1.0, 1e-5);
    assert!(report.steady && report.settling_time.unwrap() < 25.0, "{report:?}");
}

#[test]
fn snapshots_land_on_requested_times() {
    let m = heat_model(32);
    let times = vec![0.0, 0.013, 0.25, 0.7, 1.0];
    let cfg = IntegratorConfig::new(1.0, 1).with_output_times(times.clone());
    let out = integrate(&m, &cosine_start(m.grid()), &cfg).unwrap();
    let got: Vec<f64> = out.snapshots.iter().map(|s| s.t).collect();
    assert_eq!(got, times);
}

#[test]
fn identical_inputs_give_identical_trajectories() {
    let mut rng = rng(21);
    let kernel = InteractionKernel::uniform(R).unwrap();
    let m = assemble(L, 64, &domain(BoundaryKind::Periodic, 0.0), &kernel, 1.0, 7.5).unwrap();
    let s0 = State::new(0.0, random_field(&mut rng, m.grid().n_cells()), m.grid().h());
    let cfg = IntegratorConfig::new(2.0, 20);
    let a = integrate(&m, &s0, &cfg).unwrap();
    let b = integrate(&m, &s0, &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn zero_rhs_step_only_advances_time() {
    let sys = (4usize, |_t: f64, _y: &[f64], dy: &mut [f64]| {
        dy.fill(0.0);
        Ok(())
    });
    let s = State { t: 0.5, u: vec![1.0, 2.0, 3.0, 4.0], m0: 0.0 };
    let cfg = IntegratorConfig::new(1.0, 1);
    let mut stats = RunStats::default();
    let (next, res) = step_adaptive(&sys, &s, 0.1, &cfg, &mut Workspace::new(4), &mut stats).unwrap();
    assert!(res.accepted && res.error_estimate <= 1.0);
    assert_eq!(next.u, s.u);
    assert!((next.t - 0.6).abs() < 1e-15);
}

#[test]
fn nan_rhs_is_an_integration_failure() {
    let sys = (2usize, |_t: f64, _y: &[f64], dy: &mut [f64]| {
        dy[0] = f64::NAN;
        dy[1] = 0.0;
        Ok(())
    });
    let s = State { t: 0.0, u: vec![1.0, 1.0], m0: 0.0 };
    let cfg = IntegratorConfig::new(1.0, 1);
    let err = step_adaptive(&sys, &s, 0.1, &cfg, &mut Workspace::new(2), &mut RunStats::default()).unwrap_err();
    assert!(matches!(err, Error::IntegrationFailure { .. }));
    let err = integrate(&sys, &s, &cfg).unwrap_err();
    assert!(matches!(err, Error::IntegrationFailure { t, .. } if t == 0.0));
}
