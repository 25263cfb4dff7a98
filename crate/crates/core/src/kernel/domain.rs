use std::fmt;

use crate::error::{Error, Result};

/// Boundary treatment encoded by the sampling domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// `E(x) = [-R, R]` with wrap-around.
    Periodic,
    /// Slice truncated at the walls. Repulsive.
    Naive,
    /// Slice folded back at the walls so that `K[u]` vanishes there.
    NoFlux,
    /// Naive slice plus adhesive (`beta > 0`) or repulsive (`beta < 0`) wall terms.
    WallInteraction,
}

impl BoundaryKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Periodic => "periodic",
            BoundaryKind::Naive => "naive",
            BoundaryKind::NoFlux => "noflux",
            BoundaryKind::WallInteraction => "wall-interaction",
        }
    }
}

/// Piecewise-linear function on `[0, L]` given by its knots.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceProfile {
    knots: Vec<(f64, f64)>,
}

impl SliceProfile {
    /// Knots must have strictly increasing abscissae.
    pub fn from_knots(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::invalid("knots", "at least one knot is required"));
        }
        if knots.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::invalid("knots", "abscissae must be strictly increasing"));
        }
        Ok(Self { knots })
    }

    pub fn constant(value: f64) -> Self {
        Self { knots: vec![(0.0, value)] }
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = &self.knots;
        if x <= k[0].0 {
            return k[0].1;
        }
        let last = k[k.len() - 1];
        if x >= last.0 {
            return last.1;
        }
        let i = k.partition_point(|p| p.0 <= x);
        let (x0, y0) = k[i - 1];
        let (x1, y1) = k[i];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// The x-dependent sensing slice `E(x) = [f1(x), f2(x)]` and the wall strengths.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplingDomain {
    kind: BoundaryKind,
    length: f64,
    radius: f64,
    lower: SliceProfile,
    upper: SliceProfile,
    beta0: f64,
    beta_l: f64,
}

impl SamplingDomain {
    /// One of the standard slices on `[0, L]`. Requires `0 < R < L/2`.
    /// `beta0`, `beta_l` must be zero unless `kind` is `WallInteraction`.
    pub fn new(kind: BoundaryKind, length: f64, radius: f64, beta0: f64, beta_l: f64) -> Result<Self> {
        check_geometry(length, radius)?;
        if kind != BoundaryKind::WallInteraction && (beta0 != 0.0 || beta_l != 0.0) {
            return Err(Error::invalid(
                "beta",
                format!("wall strengths are only meaningful for wall interaction, not {}", kind.name()),
            ));
        }
        if !beta0.is_finite() || !beta_l.is_finite() {
            return Err(Error::invalid("beta", "wall strengths must be finite"));
        }
        let (l, r) = (length, radius);
        let (lower, upper) = match kind {
            BoundaryKind::Periodic => (SliceProfile::constant(-r), SliceProfile::constant(r)),
            BoundaryKind::Naive | BoundaryKind::WallInteraction => (
                SliceProfile::from_knots(vec![(0.0, 0.0), (r, -r)])?,
                SliceProfile::from_knots(vec![(l - r, r), (l, 0.0)])?,
            ),
            BoundaryKind::NoFlux => (
                SliceProfile::from_knots(vec![(0.0, r), (r, -r)])?,
                SliceProfile::from_knots(vec![(l - r, r), (l, -r)])?,
            ),
        };
        Ok(Self { kind, length, radius, lower, upper, beta0, beta_l })
    }

    /// A hand-built slice. No suitability check is made here; see [`validate_suitable`].
    pub fn from_profiles(
        kind: BoundaryKind,
        length: f64,
        radius: f64,
        lower: SliceProfile,
        upper: SliceProfile,
        beta0: f64,
        beta_l: f64,
    ) -> Result<Self> {
        check_geometry(length, radius)?;
        Ok(Self { kind, length, radius, lower, upper, beta0, beta_l })
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }
    pub fn length(&self) -> f64 {
        self.length
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn beta0(&self) -> f64 {
        self.beta0
    }
    pub fn beta_l(&self) -> f64 {
        self.beta_l
    }
    pub fn is_periodic(&self) -> bool {
        self.kind == BoundaryKind::Periodic
    }
    pub fn lower_profile(&self) -> &SliceProfile {
        &self.lower
    }
    pub fn upper_profile(&self) -> &SliceProfile {
        &self.upper
    }

    pub fn f1(&self, x: f64) -> f64 {
        self.lower.eval(x)
    }

    pub fn f2(&self, x: f64) -> f64 {
        self.upper.eval(x)
    }

    /// Integration limits `(f1(x), f2(x))`, empty when `f1 >= f2`.
    pub fn slice(&self, x: f64) -> (f64, f64) {
        (self.f1(x), self.f2(x))
    }

    /// Same domain with the wall strengths replaced.
    pub fn with_betas(&self, beta0: f64, beta_l: f64) -> Self {
        Self { beta0, beta_l, ..self.clone() }
    }
}

fn check_geometry(length: f64, radius: f64) -> Result<()> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::invalid("L", format!("domain length must be positive, got {length}")));
    }
    if !(radius > 0.0) {
        return Err(Error::invalid("R", format!("sensing radius must be positive, got {radius}")));
    }
    if radius >= 0.5 * length {
        return Err(Error::invalid(
            "R",
            format!("sensing radius must satisfy 0 < R < L/2, got R = {radius}, L = {length}"),
        ));
    }
    Ok(())
}

/// Clause of the suitability definition that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `-R <= f1 <= f2 <= R`
    Ordering,
    /// `f1 = -R` on `[R, L]`
    LowerFullSlice,
    /// `f2 = R` on `[0, L - R]`
    UpperFullSlice,
    /// non-increasing with bounded difference quotients
    Monotone,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Ordering => "(a) -R <= f1 <= f2 <= R",
            Clause::LowerFullSlice => "(b) f1 = -R on [R, L]",
            Clause::UpperFullSlice => "(c) f2 = R on [0, L-R]",
            Clause::Monotone => "(d) f1, f2 non-increasing with bounded slopes",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub clause: Clause,
    pub x: f64,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at x = {}: {}", self.clause, self.x, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `f1(0) = R` and `f2(L) = -R`, i.e. `K[u]` vanishes at both walls for every `u`.
    pub no_flux_capable: bool,
}

impl ValidationReport {
    pub fn is_suitable(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

/// Largest one-sided slope accepted by the sampled check of clause (d).
pub const MAX_SLICE_SLOPE: f64 = 8.0;

/// Default sampling density of [`validate_suitable`], per sensing radius.
pub const SAMPLES_PER_RADIUS: usize = 64;

/// Sampled check of the suitability clauses on `n_samples` uniform points of
/// `[0, L]`, plus the breakpoints `R` and `L - R`.
pub fn validate_suitable(domain: &SamplingDomain, n_samples: usize) -> ValidationReport {
    let n = n_samples.max(2);
    let (l, r) = (domain.length, domain.radius);
    let tol = 1e-12 * r.max(1.0);
    let mut xs: Vec<f64> = (0..n).map(|i| l * i as f64 / (n - 1) as f64).collect();
    xs.push(r);
    xs.push(l - r);
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut violations = Vec::new();
    let mut flag = |clause, x, detail: String| {
        // one entry per clause keeps reports readable
        if !violations.iter().any(|v: &Violation| v.clause == clause) {
            violations.push(Violation { clause, x, detail });
        }
    };
    for &x in &xs {
        let (f1, f2) = domain.slice(x);
        if f1 < -r - tol || f2 > r + tol || f1 > f2 + tol {
            flag(Clause::Ordering, x, format!("f1 = {f1}, f2 = {f2}"));
        }
        if x >= r - tol && (f1 + r).abs() > tol {
            flag(Clause::LowerFullSlice, x, format!("f1 = {f1}"));
        }
        if x <= l - r + tol && (f2 - r).abs() > tol {
            flag(Clause::UpperFullSlice, x, format!("f2 = {f2}"));
        }
    }
    for w in xs.windows(2) {
        let dx = w[1] - w[0];
        for (name, f) in [("f1", &domain.lower), ("f2", &domain.upper)] {
            let dq = (f.eval(w[1]) - f.eval(w[0])) / dx;
            if dq > tol / dx {
                flag(Clause::Monotone, w[0], format!("{name} increases on [{}, {}]", w[0], w[1]));
            } else if dq.abs() > MAX_SLICE_SLOPE {
                flag(Clause::Monotone, w[0], format!("{name} slope {dq} exceeds {MAX_SLICE_SLOPE}"));
            }
        }
    }
    let no_flux_capable = (domain.f1(0.0) - r).abs() <= tol && (domain.f2(l) + r).abs() <= tol;
    ValidationReport { violations, no_flux_capable }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noflux_endpoints() {
        let d = SamplingDomain::new(BoundaryKind::NoFlux, 5.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(d.f1(0.0), 1.0);
        assert_eq!(d.f2(5.0), -1.0);
        assert_eq!(d.slice(2.5), (-1.0, 1.0));
        // mirror relation f1(L - x) = -f2(x)
        for &x in &[4.1, 4.5, 4.99] {
            assert!((d.f1(5.0 - x) + d.f2(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn naive_slice_values() {
        let d = SamplingDomain::new(BoundaryKind::Naive, 5.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(d.f1(0.25), -0.25);
        assert_eq!(d.f2(0.25), 1.0);
        assert_eq!(d.f2(4.75), 0.25);
    }

    #[test]
    fn radius_must_be_below_half_length() {
        let err = SamplingDomain::new(BoundaryKind::NoFlux, 2.0, 1.0, 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "R", .. }));
        assert!(SamplingDomain::new(BoundaryKind::Naive, 5.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn beta_requires_wall_interaction() {
        assert!(SamplingDomain::new(BoundaryKind::NoFlux, 5.0, 1.0, 2.0, 2.0).is_err());
        assert!(SamplingDomain::new(BoundaryKind::WallInteraction, 5.0, 1.0, 2.0, 2.0).is_ok());
    }

    #[test]
    fn standard_domains_are_suitable() {
        let cases = [
            (BoundaryKind::Periodic, false),
            (BoundaryKind::Naive, false),
            (BoundaryKind::NoFlux, true),
            (BoundaryKind::WallInteraction, false),
        ];
        for (kind, noflux) in cases {
            let beta = if kind == BoundaryKind::WallInteraction { 2.0 } else { 0.0 };
            let d = SamplingDomain::new(kind, 5.0, 1.0, beta, beta).unwrap();
            let rep = validate_suitable(&d, 5 * SAMPLES_PER_RADIUS);
            assert!(rep.is_suitable(), "{kind:?}: {:?}", rep.violations);
            assert_eq!(rep.no_flux_capable, noflux, "{kind:?}");
        }
    }

    #[test]
    fn increasing_lower_profile_violates_monotonicity() {
        let lower = SliceProfile::from_knots(vec![(0.0, -0.5), (0.5, 0.0), (1.0, -1.0)]).unwrap();
        let upper = SliceProfile::from_knots(vec![(4.0, 1.0), (5.0, 0.0)]).unwrap();
        let d = SamplingDomain::from_profiles(BoundaryKind::Naive, 5.0, 1.0, lower, upper, 0.0, 0.0).unwrap();
        let rep = validate_suitable(&d, 320);
        assert!(rep.violated(Clause::Monotone));
        assert!(!rep.is_suitable());
    }

    #[test]
    fn partial_interior_slice_violates_full_slice_clause() {
        let lower = SliceProfile::from_knots(vec![(0.0, 0.0), (2.0, -1.0)]).unwrap();
        let d = SamplingDomain::from_profiles(BoundaryKind::Naive, 5.0, 1.0, lower, SliceProfile::constant(1.0), 0.0, 0.0)
            .unwrap();
        let rep = validate_suitable(&d, 320);
        assert!(rep.violated(Clause::LowerFullSlice));
        assert!(!rep.violated(Clause::UpperFullSlice));
    }

    #[test]
    fn profile_interpolates_between_knots() {
        let p = SliceProfile::from_knots(vec![(0.0, 1.0), (1.0, -1.0)]).unwrap();
        assert_eq!(p.eval(-3.0), 1.0);
        assert_eq!(p.eval(0.25), 0.5);
        assert_eq!(p.eval(7.0), -1.0);
        assert!(SliceProfile::from_knots(vec![(1.0, 0.0), (1.0, 1.0)]).is_err());
    }
}
