//! Linear stability of the homogeneous state on a periodic domain.
//!
//! Perturbing `u = u_bar + eps e^{ikx}` gives
//! `lambda(k) = -D k^2 + alpha u_bar H'(u_bar) k S(k)` with
//! `S(k) = 2 int_0^R sin(kr) omega(r) dr`.

use crate::error::{Error, Result};
use crate::kernel::InteractionKernel;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DispersionPoint {
    pub mode: usize,
    pub k: f64,
    pub growth_rate: f64,
}

/// Wavenumber of mode `n` on a periodic domain of length `L`.
pub fn mode_wavenumber(n: usize, length: f64) -> f64 {
    2.0 * std::f64::consts::PI * n as f64 / length
}

pub fn growth_rate(k: f64, alpha: f64, diffusion: f64, u_bar: f64, kernel: &InteractionKernel) -> f64 {
    let slope = kernel.adhesion().derivative(u_bar);
    -diffusion * k * k + alpha * u_bar * slope * k * kernel.sine_transform(k)
}

/// `alpha_n = D k / (u_bar H'(u_bar) S(k))` at `k = 2 pi n / L`.
pub fn bifurcation_alpha(n: usize, length: f64, diffusion: f64, u_bar: f64, kernel: &InteractionKernel) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n", "mode index must be at least 1"));
    }
    let k = mode_wavenumber(n, length);
    let denom = u_bar * kernel.adhesion().derivative(u_bar) * kernel.sine_transform(k);
    if denom.abs() < 1e-14 * (1.0 + u_bar.abs()) {
        return Err(Error::NoBifurcation { mode: n });
    }
    Ok(diffusion * k / denom)
}

/// `lambda` at the first `n_modes` admissible modes.
pub fn dispersion_table(
    n_modes: usize,
    length: f64,
    alpha: f64,
    diffusion: f64,
    u_bar: f64,
    kernel: &InteractionKernel,
) -> Vec<DispersionPoint> {
    (1..=n_modes)
        .map(|mode| {
            let k = mode_wavenumber(mode, length);
            DispersionPoint { mode, k, growth_rate: growth_rate(k, alpha, diffusion, u_bar, kernel) }
        })
        .collect()
}

/// Mode with the largest growth rate among `1..=n_modes`.
pub fn fastest_mode(n_modes: usize, length: f64, alpha: f64, diffusion: f64, u_bar: f64, kernel: &InteractionKernel) -> DispersionPoint {
    dispersion_table(n_modes, length, alpha, diffusion, u_bar, kernel)
        .into_iter()
        .max_by(|a, b| a.growth_rate.total_cmp(&b.growth_rate))
        .expect("at least one mode")
}
