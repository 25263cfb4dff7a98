//! Semi-discrete right-hand side `du_i/dt = (J_{i+1/2} - J_{i-1/2}) / h`.

use super::flux::{advective_flux_into, FluxBoundary};
use super::{Grid, NonlocalWeights, Rhs};
use crate::error::{Error, Result};
use crate::integrator::{OdeSystem, Tridiagonal};
use crate::kernel::BoundaryKind;

/// Flux boundary implied by a sampling domain.
pub fn flux_boundary_for(kind: BoundaryKind) -> FluxBoundary {
    match kind {
        BoundaryKind::Periodic => FluxBoundary::Periodic,
        _ => FluxBoundary::Neumann,
    }
}

/// `u_t = D u_xx - alpha (u K[u])_x` on a fixed grid.
#[derive(Debug)]
pub struct AdhesionModel {
    grid: Grid,
    weights: NonlocalWeights,
    diffusion: f64,
    alpha: f64,
    boundary: FluxBoundary,
    laplacian: Tridiagonal,
}

impl AdhesionModel {
    pub fn new(grid: Grid, weights: NonlocalWeights, diffusion: f64, alpha: f64, boundary: FluxBoundary) -> Result<Self> {
        if !(diffusion >= 0.0) || !diffusion.is_finite() {
            return Err(Error::invalid("D", format!("diffusion must be non-negative, got {diffusion}")));
        }
        if !alpha.is_finite() {
            return Err(Error::invalid("alpha", "adhesion strength must be finite"));
        }
        if weights.n_cells() != grid.n_cells() {
            return Err(Error::DimensionMismatch { expected: grid.n_cells(), actual: weights.n_cells() });
        }
        if weights.is_periodic() != (boundary == FluxBoundary::Periodic) {
            return Err(Error::invalid("boundary", "periodic weights require periodic fluxes and vice versa"));
        }
        let laplacian = Tridiagonal::laplacian(
            grid.n_cells(),
            diffusion / (grid.h() * grid.h()),
            boundary == FluxBoundary::Periodic,
        );
        Ok(Self { grid, weights, diffusion, alpha, boundary, laplacian })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    pub fn weights(&self) -> &NonlocalWeights {
        &self.weights
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn diffusion(&self) -> f64 {
        self.diffusion
    }
    pub fn boundary(&self) -> FluxBoundary {
        self.boundary
    }

    /// `K[u]` at the interfaces, with wall values zeroed for Neumann runs.
    pub fn velocities(&self, u: &[f64]) -> Result<Vec<f64>> {
        let mut a = self.weights.apply(u)?;
        if self.boundary == FluxBoundary::Neumann {
            let n = a.len() - 1;
            a[0] = 0.0;
            a[n] = 0.0;
        }
        Ok(a)
    }

    /// Total flux `J = D u_x - alpha a u_face` at every interface.
    pub fn total_flux(&self, u: &[f64]) -> Result<Vec<f64>> {
        let n = self.grid.n_cells();
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: u.len() });
        }
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::IntegrationFailure { t: f64::NAN, reason: format!("non-finite density in cell {i}") });
        }
        let a = self.velocities(u)?;
        let mut flux = vec![0.0; n + 1];
        advective_flux_into(&self.grid, u, &a, self.alpha, self.boundary, &mut flux);
        let inv_h = 1.0 / self.grid.h();
        for j in 1..n {
            flux[j] = self.diffusion * (u[j] - u[j - 1]) * inv_h - flux[j];
        }
        match self.boundary {
            FluxBoundary::Neumann => {
                flux[0] = 0.0;
                flux[n] = 0.0;
            }
            FluxBoundary::Periodic => {
                let j0 = self.diffusion * (u[0] - u[n - 1]) * inv_h - flux[0];
                flux[0] = j0;
                flux[n] = j0;
            }
        }
        Ok(flux)
    }

    pub fn rhs_into(&self, u: &[f64], du: &mut [f64]) -> Result<()> {
        let flux = self.total_flux(u)?;
        let inv_h = 1.0 / self.grid.h();
        for (i, d) in du.iter_mut().enumerate() {
            *d = (flux[i + 1] - flux[i]) * inv_h;
        }
        Ok(())
    }

    pub fn rhs(&self, u: &[f64]) -> Result<Rhs> {
        let mut du_dt = vec![0.0; u.len()];
        self.rhs_into(u, &mut du_dt)?;
        Ok(Rhs { du_dt })
    }
}

impl OdeSystem for AdhesionModel {
    fn dim(&self) -> usize {
        self.grid.n_cells()
    }

    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        self.rhs_into(y, dy).map_err(|e| match e {
            Error::IntegrationFailure { reason, .. } => Error::IntegrationFailure { t, reason },
            other => other,
        })
    }

    fn stiff_part(&self) -> Option<&Tridiagonal> {
        Some(&self.laplacian)
    }
}

/// Builds a throwaway model and evaluates its right-hand side.
pub fn rhs(
    grid: &Grid,
    weights: &NonlocalWeights,
    u: &[f64],
    diffusion: f64,
    alpha: f64,
    boundary: FluxBoundary,
) -> Result<Rhs> {
    let n = grid.n_cells();
    if u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: u.len() });
    }
    if let Some(i) = u.iter().position(|v| !v.is_finite()) {
        return Err(Error::IntegrationFailure { t: f64::NAN, reason: format!("non-finite density in cell {i}") });
    }
    let mut a = weights.apply(u)?;
    if boundary == FluxBoundary::Neumann {
        a[0] = 0.0;
        a[n] = 0.0;
    }
    let mut flux = vec![0.0; n + 1];
    advective_flux_into(grid, u, &a, alpha, boundary, &mut flux);
    let grad = super::flux::diffusive_flux(grid, u, boundary);
    for (f, g) in flux.iter_mut().zip(&grad) {
        *f = diffusion * g - *f;
    }
    let inv_h = 1.0 / grid.h();
    let du_dt = (0..n).map(|i| (flux[i + 1] - flux[i]) * inv_h).collect();
    Ok(Rhs { du_dt })
}
