use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad;

/// Shape of the even weight function `omega` on `[-R, R]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaKind {
    /// `omega(r) = 1 / (2R)`.
    Uniform,
    /// `omega(r) = (1 - |r|/R) / R`, vanishing at the sensing radius.
    Tent,
}

impl OmegaKind {
    pub fn name(self) -> &'static str {
        match self {
            OmegaKind::Uniform => "uniform",
            OmegaKind::Tent => "tent",
        }
    }
}

/// The adhesion nonlinearity `H(u)`.
#[derive(Clone)]
pub enum AdhesionFn {
    Identity,
    /// User-supplied `H`. Must be linearly bounded with a Lipschitz derivative.
    Custom {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl AdhesionFn {
    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        AdhesionFn::Custom { name: name.into(), f: Arc::new(f) }
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            AdhesionFn::Identity => u,
            AdhesionFn::Custom { f, .. } => f(u),
        }
    }

    /// `H'(u)`, exact for the identity and a central difference otherwise.
    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            AdhesionFn::Identity => 1.0,
            AdhesionFn::Custom { f, .. } => {
                let du = 1e-6 * (1.0 + u.abs());
                (f(u + du) - f(u - du)) / (2.0 * du)
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, AdhesionFn::Identity)
    }

    pub fn name(&self) -> &str {
        match self {
            AdhesionFn::Identity => "identity",
            AdhesionFn::Custom { name, .. } => name,
        }
    }
}

impl fmt::Debug for AdhesionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The pair `(omega, H)` together with the sensing radius `R`.
///
/// The signed kernel is `Omega(r) = sign(r) * omega(r)`; `omega` integrates
/// to one half over `[0, R]`.
#[derive(Clone, Debug)]
pub struct InteractionKernel {
    omega: OmegaKind,
    adhesion: AdhesionFn,
    radius: f64,
}

impl InteractionKernel {
    pub fn new(omega: OmegaKind, radius: f64, adhesion: AdhesionFn) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid("R", format!("sensing radius must be positive, got {radius}")));
        }
        Ok(Self { omega, adhesion, radius })
    }

    pub fn uniform(radius: f64) -> Result<Self> {
        Self::new(OmegaKind::Uniform, radius, AdhesionFn::Identity)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega
    }

    pub fn adhesion(&self) -> &AdhesionFn {
        &self.adhesion
    }

    #[inline]
    pub fn h(&self, u: f64) -> f64 {
        self.adhesion.eval(u)
    }

    /// `omega(r)`; zero outside `[-R, R]`.
    pub fn omega(&self, r: f64) -> f64 {
        let a = r.abs();
        if a > self.radius {
            return 0.0;
        }
        match self.omega {
            OmegaKind::Uniform => 0.5 / self.radius,
            OmegaKind::Tent => (1.0 - a / self.radius) / self.radius,
        }
    }

    /// `Omega(r) = sign(r) omega(r)`, with `Omega(0) = 0`.
    pub fn signed(&self, r: f64) -> f64 {
        if r == 0.0 {
            0.0
        } else {
            r.signum() * self.omega(r)
        }
    }

    /// `G(r) = int_0^{|r|} omega`, so that `int_a^b Omega = G(b) - G(a)`.
    fn omega_cumulative(&self, r: f64) -> f64 {
        let a = r.abs().min(self.radius);
        match self.omega {
            OmegaKind::Uniform => 0.5 * a / self.radius,
            OmegaKind::Tent => (a - 0.5 * a * a / self.radius) / self.radius,
        }
    }

    /// Closed-form `int_a^b Omega(r) dr` (limits clamped to `[-R, R]`).
    pub fn signed_integral(&self, a: f64, b: f64) -> f64 {
        self.omega_cumulative(b) - self.omega_cumulative(a)
    }

    /// Points where `Omega` is not smooth.
    pub fn breakpoints(&self) -> [f64; 3] {
        [-self.radius, 0.0, self.radius]
    }

    /// `S(k) = 2 int_0^R sin(k r) omega(r) dr`.
    pub fn sine_transform(&self, k: f64) -> f64 {
        let r = self.radius;
        let x = k * r;
        if x.abs() < 1e-4 {
            // series, avoids cancellation
            return match self.omega {
                OmegaKind::Uniform => x / 2.0 - x.powi(3) / 24.0,
                OmegaKind::Tent => x / 3.0 - x.powi(3) / 60.0,
            };
        }
        match self.omega {
            OmegaKind::Uniform => (1.0 - x.cos()) / x,
            OmegaKind::Tent => 2.0 / x - 2.0 * x.sin() / (x * x),
        }
    }

    /// Sampled checks of the kernel invariants. Returns one message per violation.
    pub fn check_invariants(&self, n_samples: usize) -> Vec<String> {
        let mut bad = Vec::new();
        let n = n_samples.max(2);
        let r = self.radius;
        for i in 0..=n {
            let x = r * i as f64 / n as f64;
            let (p, m) = (self.omega(x), self.omega(-x));
            if p != m {
                bad.push(format!("omega not even at r = {x}: {p} vs {m}"));
            }
            if p < 0.0 {
                bad.push(format!("omega negative at r = {x}"));
            }
        }
        let mass = quad::adaptive_simpson(|s| self.omega(s), 0.0, r, 1e-14, &[]);
        if (mass - 0.5).abs() > 1e-12 {
            bad.push(format!("int_0^R omega = {mass}, expected 1/2"));
        }
        // linear bound |H(u)| <= k1 (1 + |u|) and bounded difference quotients
        let mut growth: f64 = 0.0;
        let mut slope: f64 = 0.0;
        let span = 100.0;
        for i in 0..=n {
            let u = -span + 2.0 * span * i as f64 / n as f64;
            let hu = self.h(u);
            if !hu.is_finite() {
                bad.push(format!("H({u}) is not finite"));
                continue;
            }
            growth = growth.max(hu.abs() / (1.0 + u.abs()));
            let du = 1e-3;
            slope = slope.max(((self.h(u + du) - hu) / du).abs());
        }
        if !growth.is_finite() || !slope.is_finite() || slope > 1e6 {
            bad.push(format!("H is not linearly bounded on [-{span}, {span}] (slope {slope})"));
        }
        bad
    }
}
