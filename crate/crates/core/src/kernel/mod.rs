//! Interaction kernels, sensing slices and the direct evaluator of `K[u]`.

mod direct;
mod domain;
mod interaction;

pub use direct::{eval_nonlocal_direct, wall_term, CellReconstruction, NonlocalFieldSample, DIRECT_TOLERANCE};
pub use domain::{
    validate_suitable, BoundaryKind, Clause, SamplingDomain, SliceProfile, ValidationReport, Violation,
    MAX_SLICE_SLOPE, SAMPLES_PER_RADIUS,
};
pub use interaction::{AdhesionFn, InteractionKernel, OmegaKind};
