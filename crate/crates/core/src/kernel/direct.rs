//! Direct quadrature of `K[u]`, the reference evaluator for the fast path.

use super::{BoundaryKind, InteractionKernel, SamplingDomain};
use crate::error::{Error, Result};
use crate::quad;

/// `K[u](x)` at a single position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlocalFieldSample {
    pub x: f64,
    pub value: f64,
}

/// Absolute tolerance used by [`eval_nonlocal_direct`].
pub const DIRECT_TOLERANCE: f64 = 1e-10;

/// Wall-adhesion contribution `a0(x) + aL(x)` at `x`.
///
/// Returns 0 for every kind other than `WallInteraction`.
pub fn wall_term(domain: &SamplingDomain, kernel: &InteractionKernel, x: f64) -> f64 {
    if domain.kind() != BoundaryKind::WallInteraction {
        return 0.0;
    }
    let (l, r) = (domain.length(), domain.radius());
    let mut a = 0.0;
    if (0.0..r).contains(&x) {
        a += domain.beta0() * kernel.signed_integral(-r, -x);
    }
    if x > l - r && x <= l {
        a += domain.beta_l() * kernel.signed_integral(l - x, r);
    }
    a
}

/// Piecewise-linear reconstruction of cell-centred samples on `[0, L]`.
///
/// Constant within half a cell of a wall, wrapped when periodic.
#[derive(Clone, Debug)]
pub struct CellReconstruction<'a> {
    samples: &'a [f64],
    length: f64,
    h: f64,
    periodic: bool,
}

impl<'a> CellReconstruction<'a> {
    pub fn new(samples: &'a [f64], length: f64, periodic: bool) -> Self {
        let h = length / samples.len() as f64;
        Self { samples, length, h, periodic }
    }

    pub fn eval(&self, y: f64) -> f64 {
        let n = self.samples.len();
        let s = y / self.h - 0.5;
        if self.periodic {
            let s = s.rem_euclid(n as f64);
            let i = (s.floor() as usize).min(n - 1);
            let t = s - i as f64;
            return (1.0 - t) * self.samples[i] + t * self.samples[(i + 1) % n];
        }
        if s <= 0.0 {
            return self.samples[0];
        }
        if s >= (n - 1) as f64 {
            return self.samples[n - 1];
        }
        let i = s.floor() as usize;
        let t = s - i as f64;
        (1.0 - t) * self.samples[i] + t * self.samples[i + 1]
    }

    /// Offsets `r` in `[-R, R]` where the reconstruction seen from `x` has a kink.
    fn kinks(&self, x: f64, radius: f64) -> Vec<f64> {
        let shifts: &[f64] = if self.periodic { &[-self.length, 0.0, self.length] } else { &[0.0] };
        let mut out = Vec::new();
        for i in 0..self.samples.len() {
            let c = (i as f64 + 0.5) * self.h;
            for &sh in shifts {
                let r = c + sh - x;
                if r.abs() <= radius {
                    out.push(r);
                }
            }
        }
        out
    }
}

/// `K[u](x)` by adaptive quadrature of `H(u(x + r)) Omega(r)` over the slice
/// `[f1(x), f2(x)]`, plus the wall term.
///
/// `u` holds cell averages on a uniform grid of `[0, L]`; `H` is applied to
/// the cell values and then reconstructed piecewise linearly.
pub fn eval_nonlocal_direct(
    u: &[f64],
    domain: &SamplingDomain,
    kernel: &InteractionKernel,
    x: f64,
) -> Result<NonlocalFieldSample> {
    let length = domain.length();
    if !(0.0..=length).contains(&x) {
        return Err(Error::OutOfDomain { x, length });
    }
    if u.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
    }
    let hu: Vec<f64> = u.iter().map(|&v| kernel.h(v)).collect();
    let field = CellReconstruction::new(&hu, length, domain.is_periodic());
    let radius = kernel.radius();
    let (lo, hi) = domain.slice(x);
    let lo = lo.max(-radius);
    let hi = hi.min(radius);

    let mut breaks = field.kinks(x, radius);
    breaks.extend(kernel.breakpoints());
    let integrand = |r: f64| field.eval(x + r) * kernel.signed(r);
    let value = quad::adaptive_simpson(integrand, lo, hi, 1e-2 * DIRECT_TOLERANCE, &breaks)
        + wall_term(domain, kernel, x);
    Ok(NonlocalFieldSample { x, value })
}
