//! Finite-volume discretization on a cell-centred grid.

mod flux;
mod grid;
mod model;
mod state;
mod weights;

pub use flux::{advective_flux_limited, diffusive_flux, koren_correction, FluxBoundary, LIMITER_NAME};
pub use grid::{build_grid, Grid};
pub use model::{flux_boundary_for, rhs, AdhesionModel};
pub use state::{Rhs, State};
pub use weights::{apply_nonlocal, precompute_weights, BoundaryRow, EvalPath, NonlocalWeights};
