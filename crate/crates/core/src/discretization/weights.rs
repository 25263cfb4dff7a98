//! Quadrature weights of the discrete non-local operator.
//!
//! With `H(u)` reconstructed piecewise linearly from the cell values `H_l`,
//! the velocity at interface `j` is `a_j = sum_l w_{j,l} H_l` where
//!
//! ```text
//! w_{j,l} = int_{f1(x_j)}^{f2(x_j)} Phi(j - l - 1/2 + r/h) Omega(r) dr
//! ```
//!
//! and `Phi` is the unit hat function. Away from the walls the slice is the
//! full `[-R, R]`, the weights depend only on `j - l`, and the product is a
//! convolution evaluated with the FFT. Interfaces within `R` of a wall get
//! dense rows.

use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::Grid;
use crate::error::{Error, Result};
use crate::kernel::{validate_suitable, wall_term, InteractionKernel, OmegaKind, SamplingDomain, SAMPLES_PER_RADIUS};
use crate::quad;

/// How the translation-invariant part of the operator is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalPath {
    Fft,
    /// Direct stencil sums. Slower; kept as a cross-check of the FFT path.
    Dense,
}

/// Dense weights for one interface near a wall.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryRow {
    pub interface: usize,
    pub first_cell: usize,
    pub weights: Vec<f64>,
}

impl BoundaryRow {
    pub fn apply(&self, hu: &[f64]) -> f64 {
        self.weights.iter().zip(&hu[self.first_cell..]).map(|(w, v)| w * v).sum()
    }
}

struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    stencil_hat: Vec<Complex64>,
}

/// Precomputed operator `u -> K[u]` at every interface.
pub struct NonlocalWeights {
    n_cells: usize,
    radius_cells: usize,
    periodic: bool,
    /// `stencil[d + M]` multiplies `H_l` at interface `j = l + d`, `d = -M ..= M + 1`.
    stencil: Vec<f64>,
    boundary_rows: Vec<BoundaryRow>,
    wall_offsets: Option<Vec<f64>>,
    spectral: Spectral,
    path: EvalPath,
    kernel: InteractionKernel,
}

impl fmt::Debug for NonlocalWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonlocalWeights")
            .field("n_cells", &self.n_cells)
            .field("radius_cells", &self.radius_cells)
            .field("periodic", &self.periodic)
            .field("boundary_rows", &self.boundary_rows.len())
            .field("path", &self.path)
            .finish()
    }
}

/// `int_{-inf}^{s} Phi`.
fn hat_cumulative(s: f64) -> f64 {
    if s <= -1.0 {
        0.0
    } else if s <= 0.0 {
        0.5 * (s + 1.0) * (s + 1.0)
    } else if s < 1.0 {
        1.0 - 0.5 * (1.0 - s) * (1.0 - s)
    } else {
        1.0
    }
}

fn hat(s: f64) -> f64 {
    (1.0 - s.abs()).max(0.0)
}

/// `int_lo^hi Phi(m + r/h) Omega(r) dr`.
fn hat_moment(kernel: &InteractionKernel, h: f64, m: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    match kernel.omega_kind() {
        OmegaKind::Uniform => {
            let c = h * 0.5 / kernel.radius();
            let seg = |a: f64, b: f64| {
                if b > a {
                    hat_cumulative(m + b / h) - hat_cumulative(m + a / h)
                } else {
                    0.0
                }
            };
            c * (seg(lo.max(0.0), hi) - seg(lo, hi.min(0.0)))
        }
        OmegaKind::Tent => {
            let breaks = [(-1.0 - m) * h, -m * h, 0.0, (1.0 - m) * h];
            let mut sorted = breaks;
            sorted.sort_by(f64::total_cmp);
            quad::gauss5_piecewise(|r| hat(m + r / h) * kernel.signed(r), lo, hi, &sorted)
        }
    }
}

impl NonlocalWeights {
    /// Precomputes the interior stencil, the wall rows and the wall offsets.
    ///
    /// Refuses domains that fail the suitability check.
    pub fn new(grid: &Grid, domain: &SamplingDomain, kernel: &InteractionKernel) -> Result<Self> {
        let m = grid.radius_cells();
        let h = grid.h();
        let n = grid.n_cells();
        if (domain.length() - grid.length()).abs() > 1e-12 * grid.length() {
            return Err(Error::invalid("L", "grid and sampling domain lengths differ"));
        }
        if (domain.radius() - kernel.radius()).abs() > 1e-12 || (grid.radius() - kernel.radius()).abs() > 1e-12 {
            return Err(Error::invalid("R", "grid, sampling domain and kernel radii differ"));
        }
        let periodic = domain.is_periodic();
        if !periodic {
            let samples = (SAMPLES_PER_RADIUS as f64 * domain.length() / domain.radius()).ceil() as usize;
            let report = validate_suitable(domain, samples.max(grid.n_cells() + 1));
            if !report.is_suitable() {
                let msg: Vec<String> = report.violations.iter().map(|v| format!("{} at x = {}", v.clause, v.x)).collect();
                return Err(Error::UnsuitableDomain(msg.join("; ")));
            }
        }
        let r = kernel.radius();
        let stencil: Vec<f64> = (-(m as i64)..=(m as i64 + 1))
            .map(|d| hat_moment(kernel, h, d as f64 - 0.5, -r, r))
            .collect();

        let mut boundary_rows = Vec::new();
        if !periodic {
            let near_wall = (0..=m).chain(n - m..=n);
            for j in near_wall {
                boundary_rows.push(Self::dense_row(grid, domain, kernel, j));
            }
        }
        let wall_offsets = (domain.kind() == crate::kernel::BoundaryKind::WallInteraction)
            .then(|| grid.interfaces().iter().map(|&x| wall_term(domain, kernel, x)).collect());

        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let mut stencil_hat = vec![Complex64::new(0.0, 0.0); n];
        for (k, &w) in stencil.iter().enumerate() {
            let d = k as i64 - m as i64;
            stencil_hat[d.rem_euclid(n as i64) as usize].re += w;
        }
        forward.process(&mut stencil_hat);

        Ok(Self {
            n_cells: n,
            radius_cells: m,
            periodic,
            stencil,
            boundary_rows,
            wall_offsets,
            spectral: Spectral { forward, inverse, stencil_hat },
            path: EvalPath::Fft,
            kernel: kernel.clone(),
        })
    }

    /// Dense weights at interface `j` with the slice limits evaluated at `x_j`.
    ///
    /// The reconstruction is constant within half a cell of each wall, so the
    /// hat functions of the ghost nodes fold onto the first and last cells.
    pub fn dense_row(grid: &Grid, domain: &SamplingDomain, kernel: &InteractionKernel, j: usize) -> BoundaryRow {
        let n = grid.n_cells() as i64;
        let m = grid.radius_cells() as i64;
        let h = grid.h();
        let r = kernel.radius();
        let (lo, hi) = domain.slice(grid.interface(j));
        let (lo, hi) = (lo.max(-r), hi.min(r));
        let j = j as i64;
        let first = (j - m - 1).max(0);
        let last = (j + m).min(n - 1);
        let mut weights = vec![0.0; (last - first + 1) as usize];
        for l in (j - m - 1).max(-1)..=(j + m).min(n) {
            let w = hat_moment(kernel, h, (j - l) as f64 - 0.5, lo, hi);
            let cell = l.clamp(0, n - 1);
            weights[(cell - first) as usize] += w;
        }
        BoundaryRow { interface: j as usize, first_cell: first as usize, weights }
    }

    pub fn with_path(mut self, path: EvalPath) -> Self {
        self.path = path;
        self
    }

    pub fn path(&self) -> EvalPath {
        self.path
    }

    pub fn interior_stencil(&self) -> &[f64] {
        &self.stencil
    }

    pub fn boundary_rows(&self) -> &[BoundaryRow] {
        &self.boundary_rows
    }

    pub fn wall_offsets(&self) -> Option<&[f64]> {
        self.wall_offsets.as_deref()
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn kernel(&self) -> &InteractionKernel {
        &self.kernel
    }

    /// Interfaces evaluated by the stencil, `first ..= last`.
    pub fn interior_range(&self) -> (usize, usize) {
        if self.periodic {
            (0, self.n_cells)
        } else {
            (self.radius_cells + 1, self.n_cells - self.radius_cells - 1)
        }
    }

    /// `K[u]` at all `n + 1` interfaces (no `alpha`).
    pub fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n_cells + 1];
        self.apply_into(u, &mut out)?;
        Ok(out)
    }

    pub fn apply_into(&self, u: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.n_cells;
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: u.len() });
        }
        if out.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, actual: out.len() });
        }
        let hu: Vec<f64> = if self.kernel.adhesion().is_identity() {
            u.to_vec()
        } else {
            u.iter().map(|&v| self.kernel.h(v)).collect()
        };
        let (first, last) = self.interior_range();
        match self.path {
            EvalPath::Fft => self.circular_fft(&hu, out),
            EvalPath::Dense => self.circular_dense(&hu, first, last, out),
        }
        if self.periodic {
            out[n] = out[0];
        } else {
            for row in &self.boundary_rows {
                out[row.interface] = row.apply(&hu);
            }
        }
        if let Some(offsets) = &self.wall_offsets {
            for (a, w) in out.iter_mut().zip(offsets) {
                *a += w;
            }
        }
        Ok(())
    }

    fn circular_fft(&self, hu: &[f64], out: &mut [f64]) {
        let n = self.n_cells;
        let mut buf: Vec<Complex64> = hu.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.spectral.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectral.stencil_hat) {
            *b *= s;
        }
        self.spectral.inverse.process(&mut buf);
        let scale = 1.0 / n as f64;
        for (o, b) in out[..n].iter_mut().zip(&buf) {
            *o = b.re * scale;
        }
    }

    fn circular_dense(&self, hu: &[f64], first: usize, last: usize, out: &mut [f64]) {
        let n = self.n_cells as i64;
        let m = self.radius_cells as i64;
        let last = last.min(self.n_cells - 1);
        for j in first..=last {
            let mut acc = 0.0;
            for (k, &w) in self.stencil.iter().enumerate() {
                let d = k as i64 - m;
                let l = (j as i64 - d).rem_euclid(n) as usize;
                acc += w * hu[l];
            }
            out[j] = acc;
        }
    }
}

/// Free-function form of [`NonlocalWeights::new`].
pub fn precompute_weights(grid: &Grid, domain: &SamplingDomain, kernel: &InteractionKernel) -> Result<NonlocalWeights> {
    NonlocalWeights::new(grid, domain, kernel)
}

/// Free-function form of [`NonlocalWeights::apply`].
pub fn apply_nonlocal(weights: &NonlocalWeights, u: &[f64]) -> Result<Vec<f64>> {
    weights.apply(u)
}
