//! Solver for the one-dimensional non-local cell-cell adhesion equation
//!
//! ```text
//! u_t = D u_xx - alpha (u K[u])_x,    K[u](x) = int_{E(x)} H(u(x + r)) Omega(r) dr
//! ```
//!
//! on `[0, L]` with periodic, naive, no-flux and wall-interaction sensing
//! slices `E(x)`.
//!
//! * [`kernel`]: interaction kernels, sampling domains, and a direct
//!   quadrature evaluator of `K[u]` used as reference.
//! * [`discretization`]: cell-centred finite volumes, FFT-accelerated
//!   non-local velocities, limited upwind advection.
//! * [`integrator`]: adaptive Rosenbrock-W time stepping.
//! * [`analysis`]: dispersion relation, growth fits, peak census, diagnostics.

pub mod analysis;
pub mod discretization;
pub mod error;
pub mod integrator;
pub mod kernel;
mod quad;

pub use discretization::{build_grid, AdhesionModel, EvalPath, FluxBoundary, Grid, NonlocalWeights, State};
pub use error::{Error, Result};
pub use integrator::{integrate, Integration, IntegratorConfig, RunStats};
pub use kernel::{AdhesionFn, BoundaryKind, InteractionKernel, OmegaKind, SamplingDomain};

/// Quadrature helpers, exposed for oracles in tests and benchmarks.
pub mod quadrature {
    pub use crate::quad::{adaptive_simpson, gauss5, gauss5_piecewise};
}

/// Grid, weights and model for one configuration.
pub fn assemble(
    length: f64,
    n_per_unit: usize,
    domain: &SamplingDomain,
    kernel: &InteractionKernel,
    diffusion: f64,
    alpha: f64,
) -> Result<AdhesionModel> {
    let grid = build_grid(length, n_per_unit, kernel.radius())?;
    let weights = NonlocalWeights::new(&grid, domain, kernel)?;
    AdhesionModel::new(grid, weights, diffusion, alpha, discretization::flux_boundary_for(domain.kind()))
}
