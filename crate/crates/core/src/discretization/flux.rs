//! Interface fluxes: central diffusion and limited upwind advection.

use super::Grid;

/// Boundary treatment of the fluxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FluxBoundary {
    Periodic,
    /// Zero total flux through both walls.
    Neumann,
}

/// Name of the limiter, recorded in run manifests.
pub const LIMITER_NAME: &str = "koren (third-order upwind-biased, kappa = 1/3)";

/// `(u_{j} - u_{j-1}) / h` at each of the `n + 1` interfaces.
///
/// Zero at the walls for `Neumann`; wrapped for `Periodic`.
pub fn diffusive_flux(grid: &Grid, u: &[f64], boundary: FluxBoundary) -> Vec<f64> {
    let n = u.len();
    debug_assert_eq!(n, grid.n_cells());
    let inv_h = 1.0 / grid.h();
    let mut g = vec![0.0; n + 1];
    for j in 1..n {
        g[j] = (u[j] - u[j - 1]) * inv_h;
    }
    if boundary == FluxBoundary::Periodic {
        let w = (u[0] - u[n - 1]) * inv_h;
        g[0] = w;
        g[n] = w;
    }
    g
}

/// Limited correction `1/2 psi(theta) * back` with `theta = fwd / back`.
///
/// Koren limiter `psi = max(0, min(2 theta, (1 + 2 theta)/3, 2))`, written
/// without the division.
#[inline]
pub fn koren_correction(back: f64, fwd: f64) -> f64 {
    if back * fwd <= 0.0 {
        return 0.0;
    }
    let (b, f) = (back.abs(), fwd.abs());
    0.5 * back.signum() * (2.0 * f).min((b + 2.0 * f) / 3.0).min(2.0 * b)
}

/// Upwind-biased face value at interface `j` for velocity sign `a`.
#[inline]
fn face_value(u: &[f64], j: usize, a: f64, boundary: FluxBoundary) -> f64 {
    let n = u.len();
    let at = |i: i64| -> f64 {
        match boundary {
            FluxBoundary::Periodic => u[i.rem_euclid(n as i64) as usize],
            // mirror ghosts: first order next to the walls
            FluxBoundary::Neumann => u[i.clamp(0, n as i64 - 1) as usize],
        }
    };
    let j = j as i64;
    if a >= 0.0 {
        let c = at(j - 1);
        c + koren_correction(c - at(j - 2), at(j) - c)
    } else {
        let c = at(j);
        c + koren_correction(c - at(j + 1), at(j - 1) - c)
    }
}

/// `alpha * a_j * u_face` at every interface.
///
/// Reduces to first-order upwind at extrema and to `alpha * a` for a constant
/// unit field.
pub fn advective_flux_limited(grid: &Grid, u: &[f64], a: &[f64], alpha: f64, boundary: FluxBoundary) -> Vec<f64> {
    let mut out = vec![0.0; u.len() + 1];
    advective_flux_into(grid, u, a, alpha, boundary, &mut out);
    out
}

pub(crate) fn advective_flux_into(
    _grid: &Grid,
    u: &[f64],
    a: &[f64],
    alpha: f64,
    boundary: FluxBoundary,
    out: &mut [f64],
) {
    let n = u.len();
    let interior = match boundary {
        FluxBoundary::Periodic => 0..=n,
        FluxBoundary::Neumann => 1..=n - 1,
    };
    if boundary == FluxBoundary::Neumann {
        out[0] = 0.0;
        out[n] = 0.0;
    }
    for j in interior {
        let v = a[j];
        out[j] = if v == 0.0 { 0.0 } else { alpha * v * face_value(u, j, v, boundary) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::build_grid;

    #[test]
    fn gradients_of_constant_and_linear_fields() {
        let g = build_grid(5.0, 8, 1.0).unwrap();
        let flat = diffusive_flux(&g, &vec![1.0; 40], FluxBoundary::Neumann);
        assert!(flat.iter().all(|&v| v == 0.0));
        let lin = diffusive_flux(&g, &g.centers(), FluxBoundary::Neumann);
        assert_eq!(lin[0], 0.0);
        assert_eq!(lin[40], 0.0);
        assert!(lin[1..40].iter().all(|&v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn cosine_gradient_is_second_order() {
        // discrete gradient at interfaces vs -(pi/L) sin(pi x / L)
        let err = |n_per_unit: usize| {
            let g = build_grid(5.0, n_per_unit, 1.0).unwrap();
            let k = std::f64::consts::PI / 5.0;
            let u: Vec<f64> = g.centers().iter().map(|&x| (k * x).cos()).collect();
            let d = diffusive_flux(&g, &u, FluxBoundary::Neumann);
            (1..g.n_cells()).map(|j| (d[j] + k * (k * g.interface(j)).sin()).abs()).fold(0.0, f64::max)
        };
        let (e1, e2) = (err(16), err(32));
        let order = (e1 / e2).log2();
        assert!((order - 2.0).abs() < 0.05, "observed order {order}");
    }

    #[test]
    fn periodic_gradient_wraps() {
        let g = build_grid(5.0, 8, 1.0).unwrap();
        let mut u = vec![0.0; 40];
        u[0] = 1.0;
        let d = diffusive_flux(&g, &u, FluxBoundary::Periodic);
        assert_eq!(d[0], 8.0);
        assert_eq!(d[40], 8.0);
    }

    #[test]
    fn constant_field_flux_is_alpha_a() {
        let g = build_grid(5.0, 8, 1.0).unwrap();
        let a: Vec<f64> = (0..=40).map(|j| (j as f64 * 0.3).sin()).collect();
        for bc in [FluxBoundary::Periodic, FluxBoundary::Neumann] {
            let f = advective_flux_limited(&g, &vec![1.0; 40], &a, 2.5, bc);
            for j in 1..40 {
                assert!((f[j] - 2.5 * a[j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn zero_wall_velocity_gives_zero_wall_flux() {
        let g = build_grid(5.0, 8, 1.0).unwrap();
        let u: Vec<f64> = (0..40).map(|i| 1.0 + i as f64).collect();
        let mut a = vec![1.0; 41];
        a[0] = 0.0;
        a[40] = 0.0;
        let f = advective_flux_limited(&g, &u, &a, 1.0, FluxBoundary::Periodic);
        assert_eq!(f[0], 0.0);
        assert_eq!(f[40], 0.0);
    }

    #[test]
    fn limiter_properties() {
        // smooth monotone data: unlimited kappa = 1/3 reconstruction
        assert!((koren_correction(1.0, 1.0) - 0.5).abs() < 1e-15);
        // extrema: first order
        assert_eq!(koren_correction(1.0, -1.0), 0.0);
        assert_eq!(koren_correction(0.0, 3.0), 0.0);
        // bounded by back difference
        assert!(koren_correction(1.0, 100.0) <= 1.0);
        assert!(koren_correction(-1.0, -100.0) >= -1.0);
    }
}
