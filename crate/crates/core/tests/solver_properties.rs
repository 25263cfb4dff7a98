mod common;

use adhesion_core::discretization::advective_flux_limited;
use adhesion_core::*;
use common::*;
use proptest::prelude::*;

fn model(kind: BoundaryKind, beta: f64, npu: usize, alpha: f64) -> AdhesionModel {
    let kernel = InteractionKernel::uniform(R).unwrap();
    assemble(L, npu, &domain(kind, beta), &kernel, 1.0, alpha).unwrap()
}

#[test]
fn rhs_mass_derivative_vanishes() {
    let mut rng = rng(10);
    for kind in ALL_KINDS {
        let m = model(kind, 2.0, 64, 7.5);
        for _ in 0..20 {
            let u = random_field(&mut rng, m.grid().n_cells());
            let du = m.rhs(&u).unwrap().du_dt;
            let dm = m.grid().h() * du.iter().sum::<f64>();
            assert!(dm.abs() <= 1e-12 * (1.0 + max_abs(&du)), "{kind:?}: {dm:e}");
        }
    }
}

#[test]
fn constant_state_is_steady_only_when_periodic() {
    let u = vec![1.0; 320];
    let du = model(BoundaryKind::Periodic, 0.0, 64, 7.5).rhs(&u).unwrap().du_dt;
    assert!(max_abs(&du) <= 1e-12);
    let du = model(BoundaryKind::NoFlux, 0.0, 64, 3.25).rhs(&u).unwrap().du_dt;
    assert!(du[0].abs() > 1e-3 && du[319].abs() > 1e-3);
    let du = model(BoundaryKind::NoFlux, 0.0, 64, 0.0).rhs(&u).unwrap().du_dt;
    assert!(max_abs(&du) == 0.0);
}

#[test]
fn nan_state_is_an_integration_failure() {
    let mut u = vec![1.0; 320];
    u[17] = f64::NAN;
    let err = model(BoundaryKind::Periodic, 0.0, 64, 1.0).rhs(&u).unwrap_err();
    assert!(matches!(err, Error::IntegrationFailure { .. }), "{err}");
}

#[test]
fn runs_conserve_mass_and_stay_non_negative() {
    let mut rng = rng(11);
    for kind in ALL_KINDS {
        let m = model(kind, -1.0, 64, 7.5);
        let u0 = random_field(&mut rng, m.grid().n_cells());
        let s0 = State::new(0.0, u0, m.grid().h());
        let run = integrate(&m, &s0, &IntegratorConfig::new(5.0, 50)).unwrap();
        for s in &run.snapshots {
            let drift = (m.grid().mass(&s.u) - s0.m0).abs() / s0.m0;
            assert!(drift <= 1e-7, "{kind:?} t={}: {drift:e}", s.t);
            assert!(s.min() >= -1e-12, "{kind:?} t={}: {}", s.t, s.min());
        }
    }
}

#[test]
fn noflux_preserves_mirror_symmetry() {
    let mut rng = rng(12);
    let m = model(BoundaryKind::NoFlux, 0.0, 128, 7.5);
    let n = m.grid().n_cells();
    let half = random_field(&mut rng, n / 2);
    let u0: Vec<f64> = half.iter().chain(half.iter().rev()).copied().collect();
    let run = integrate(&m, &State::new(0.0, u0, m.grid().h()), &IntegratorConfig::new(1.0, 10)).unwrap();
    for s in &run.snapshots {
        let asym = (0..n).map(|i| (s.u[i] - s.u[n - 1 - i]).abs()).fold(0.0, f64::max);
        assert!(asym <= 1e-8, "t={}: {asym:e}", s.t);
    }
}

fn euler_step(u: &[f64], a: &[f64], boundary: FluxBoundary) -> Vec<f64> {
    let grid = build_grid(L, 16, R).unwrap();
    let alpha = 2.0;
    let amax = max_abs(a);
    let dt = if amax > 0.0 { 0.5 * grid.h() / (alpha * amax) } else { 1.0 };
    let f = advective_flux_limited(&grid, u, a, alpha, boundary);
    (0..u.len()).map(|i| u[i] - dt / grid.h() * (f[i + 1] - f[i])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn limited_upwind_euler_step_keeps_positivity(
        base in prop::collection::vec(0.0f64..1.0, 80),
        spike_at in 0usize..80,
        spike in 0.0f64..100.0,
        a in prop::collection::vec(0.0f64..3.0, 81),
        periodic in any::<bool>(),
    ) {
        let mut u = base;
        u[spike_at] += spike;
        let mut a = a;
        let boundary = if periodic {
            a[80] = a[0];
            FluxBoundary::Periodic
        } else {
            a[0] = 0.0;
            a[80] = 0.0;
            FluxBoundary::Neumann
        };
        let next = euler_step(&u, &a, boundary);
        let lo = next.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!(lo >= -1e-12 * (1.0 + spike), "min {}", lo);
    }
}

#[test]
fn limited_flux_of_constant_field_is_plain_transport() {
    let grid = build_grid(L, 16, R).unwrap();
    let a: Vec<f64> = (0..=80).map(|j| (j as f64 * 0.37).sin()).collect();
    let f = advective_flux_limited(&grid, &vec![1.0; 80], &a, 3.0, FluxBoundary::Periodic);
    for j in 0..=80 {
        assert!((f[j] - 3.0 * a[j]).abs() <= 1e-15);
    }
}

#[test]
fn naive_step_profile_velocity_points_toward_mass() {
    let kernel = InteractionKernel::uniform(R).unwrap();
    let dom = domain(BoundaryKind::Naive, 0.0);
    let grid = build_grid(L, 32, R).unwrap();
    let n = grid.n_cells();
    let u: Vec<f64> = (0..n).map(|i| if grid.center(i) < L / 2.0 { 1.0 } else { 0.0 }).collect();
    let a = NonlocalWeights::new(&grid, &dom, &kernel).unwrap().apply(&u).unwrap();
    let oracle = |x: f64| adhesion_core::kernel::eval_nonlocal_direct(&u, &dom, &kernel, x).unwrap().value;
    // mass lies to the left of the step at interface n/2 and to the right of
    // the left wall
    let foot = n / 2 + 4;
    let top = n / 2 - 4;
    let wall = 4;
    assert!(a[foot] < 0.0 && oracle(grid.interface(foot)) < 0.0, "foot {}", a[foot]);
    assert!(a[top] < 0.0 && oracle(grid.interface(top)) < 0.0, "top {}", a[top]);
    assert!(a[wall] > 0.0 && oracle(grid.interface(wall)) > 0.0, "wall {}", a[wall]);
}
