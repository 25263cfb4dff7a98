//! Run configuration: a TOML file, overridden by command-line flags.
//!
//! Every key is optional except `alpha`; missing keys take the defaults of
//! the reference parameter table (L = 5, 128 cells per unit length, D = 1,
//! R = 1, t_f = 25, tolerance 1e-5, periodic boundary).
//!
//! ```toml
//! alpha = 3.25
//! bc = "adhesive"      # periodic | naive | noflux | adhesive | repulsive
//! beta0 = 2.0          # wall strengths, adhesive/repulsive only
//! beta_l = 2.0
//!
//! [ic]
//! mean = 1.0
//! noise_amplitude = 1.0
//! seed = 7
//! ```

use adhesion_core::{AdhesionFn, BoundaryKind, InteractionKernel, OmegaKind, SamplingDomain};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {error}")]
    Io { path: PathBuf, error: std::io::Error },
    #[error("config {path}: {error}")]
    Parse { path: PathBuf, error: toml::de::Error },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

fn invalid(key: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key, reason: reason.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BcKind {
    Periodic,
    Naive,
    #[value(name = "noflux")]
    Noflux,
    /// Wall interaction with positive strength.
    Adhesive,
    /// Wall interaction with negative strength.
    Repulsive,
}

impl BcKind {
    pub fn boundary_kind(self) -> BoundaryKind {
        match self {
            BcKind::Periodic => BoundaryKind::Periodic,
            BcKind::Naive => BoundaryKind::Naive,
            BcKind::Noflux => BoundaryKind::NoFlux,
            BcKind::Adhesive | BcKind::Repulsive => BoundaryKind::WallInteraction,
        }
    }

    pub fn is_wall(self) -> bool {
        matches!(self, BcKind::Adhesive | BcKind::Repulsive)
    }

    fn default_beta(self) -> f64 {
        match self {
            BcKind::Adhesive => 2.0,
            BcKind::Repulsive => -1.0,
            _ => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BcKind::Periodic => "periodic",
            BcKind::Naive => "naive",
            BcKind::Noflux => "noflux",
            BcKind::Adhesive => "adhesive",
            BcKind::Repulsive => "repulsive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Uniform,
    Tent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdhesionKind {
    Identity,
}

/// `u = mean + mode_amplitude cos(2 pi mode x / L) + noise_amplitude xi`,
/// or the values read from `file`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IcSpec {
    pub mean: f64,
    pub noise_amplitude: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub mode: u32,
    pub mode_amplitude: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

impl Default for IcSpec {
    fn default() -> Self {
        Self { mean: 1.0, noise_amplitude: 1.0, seed: None, mode: 0, mode_amplitude: 0.0, file: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub length: f64,
    pub n_per_unit: usize,
    pub diffusion: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub radius: f64,
    pub bc: BcKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_l: Option<f64>,
    pub kernel: KernelKind,
    pub adhesion: AdhesionKind,
    pub t_final: f64,
    /// Uniform snapshot intervals over `[0, t_final]`; ignored when
    /// `output_times` is given.
    pub snapshots: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_times: Option<Vec<f64>>,
    pub rel_tol: f64,
    pub abs_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    pub ic: IcSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            length: 5.0,
            n_per_unit: 128,
            diffusion: 1.0,
            alpha: None,
            radius: 1.0,
            bc: BcKind::Periodic,
            beta0: None,
            beta_l: None,
            kernel: KernelKind::Uniform,
            adhesion: AdhesionKind::Identity,
            t_final: 25.0,
            snapshots: 250,
            output_times: None,
            rel_tol: 1e-5,
            abs_tol: 1e-5,
            output_dir: None,
            ic: IcSpec::default(),
        }
    }
}

/// Command-line values that replace config-file entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub bc: Option<BcKind>,
    pub beta: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub t_final: Option<f64>,
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|error| ConfigError::Parse { path: path.to_owned(), error })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|error| ConfigError::Io { path: path.to_owned(), error })?;
        Self::from_toml(&text, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(a) = o.alpha {
            self.alpha = Some(a);
        }
        if let Some(bc) = o.bc {
            if bc != self.bc && !bc.is_wall() {
                self.beta0 = None;
                self.beta_l = None;
            }
            self.bc = bc;
        }
        if let Some(b) = o.beta {
            self.beta0 = Some(b);
            self.beta_l = Some(b);
        }
        if let Some(s) = o.seed {
            self.ic.seed = Some(s);
        }
        if let Some(out) = &o.out {
            self.output_dir = Some(out.clone());
        }
        if let Some(t) = o.t_final {
            self.t_final = t;
        }
        if let Some(t) = o.tol {
            self.rel_tol = t;
            self.abs_tol = t;
        }
    }

    pub fn alpha(&self) -> Result<f64, ConfigError> {
        self.alpha.ok_or(ConfigError::Missing("alpha"))
    }

    /// Wall strengths `(beta0, beta_l)`, defaulting to 2 (adhesive) or -1
    /// (repulsive).
    pub fn betas(&self) -> (f64, f64) {
        let d = self.bc.default_beta();
        (self.beta0.unwrap_or(d), self.beta_l.unwrap_or(d))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |key: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(key, format!("must be positive and finite, got {v}")))
            }
        };
        positive("length", self.length)?;
        positive("radius", self.radius)?;
        positive("rel_tol", self.rel_tol)?;
        positive("abs_tol", self.abs_tol)?;
        if !(self.diffusion >= 0.0 && self.diffusion.is_finite()) {
            return Err(invalid("diffusion", format!("must be non-negative, got {}", self.diffusion)));
        }
        let alpha = self.alpha()?;
        if !alpha.is_finite() {
            return Err(invalid("alpha", "must be finite"));
        }
        if self.n_per_unit < 8 {
            return Err(invalid("n_per_unit", format!("need at least 8 cells per unit length, got {}", self.n_per_unit)));
        }
        let cells = self.length * self.n_per_unit as f64;
        if (cells - cells.round()).abs() > 1e-9 {
            return Err(invalid("length", format!("length * n_per_unit = {cells} is not an integer")));
        }
        let m = self.radius * self.n_per_unit as f64;
        if (m - m.round()).abs() > 1e-9 {
            return Err(invalid("radius", format!("radius * n_per_unit = {m} must be an integer")));
        }
        if self.radius >= self.length / 2.0 {
            return Err(invalid("radius", format!("need radius < length / 2 = {}", self.length / 2.0)));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(invalid("t_final", format!("must be finite and non-negative, got {}", self.t_final)));
        }
        if self.snapshots == 0 && self.output_times.is_none() {
            return Err(invalid("snapshots", "need at least one snapshot interval"));
        }
        if let Some(times) = &self.output_times {
            if times.windows(2).any(|w| w[1] < w[0]) || times.iter().any(|&t| !(0.0..=self.t_final).contains(&t)) {
                return Err(invalid("output_times", "must be non-decreasing and inside [0, t_final]"));
            }
        }
        if !self.bc.is_wall() {
            if self.beta0.is_some() {
                return Err(invalid("beta0", format!("wall strengths need bc adhesive or repulsive, not {}", self.bc.name())));
            }
            if self.beta_l.is_some() {
                return Err(invalid("beta_l", format!("wall strengths need bc adhesive or repulsive, not {}", self.bc.name())));
            }
        }
        let (b0, bl) = self.betas();
        for (key, b) in [("beta0", b0), ("beta_l", bl)] {
            if !b.is_finite() {
                return Err(invalid(key, "must be finite"));
            }
            if self.bc == BcKind::Adhesive && b < 0.0 {
                return Err(invalid(key, format!("adhesive walls need a non-negative strength, got {b}")));
            }
            if self.bc == BcKind::Repulsive && b > 0.0 {
                return Err(invalid(key, format!("repulsive walls need a non-positive strength, got {b}")));
            }
        }
        let ic = &self.ic;
        if !ic.mean.is_finite() || ic.mean < 0.0 {
            return Err(invalid("ic.mean", format!("must be non-negative, got {}", ic.mean)));
        }
        if !(ic.noise_amplitude >= 0.0 && ic.noise_amplitude.is_finite()) {
            return Err(invalid("ic.noise_amplitude", format!("must be non-negative, got {}", ic.noise_amplitude)));
        }
        if !ic.mode_amplitude.is_finite() {
            return Err(invalid("ic.mode_amplitude", "must be finite"));
        }
        if ic.file.is_none() && ic.noise_amplitude > 0.0 && ic.seed.is_none() {
            return Err(ConfigError::Missing("ic.seed"));
        }
        Ok(())
    }

    pub fn n_cells(&self) -> usize {
        (self.length * self.n_per_unit as f64).round() as usize
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n_per_unit as f64
    }

    pub fn output_times(&self) -> Vec<f64> {
        match &self.output_times {
            Some(t) => t.clone(),
            None => (0..=self.snapshots).map(|k| self.t_final * k as f64 / self.snapshots as f64).collect(),
        }
    }

    pub fn kernel(&self) -> adhesion_core::Result<InteractionKernel> {
        let omega = match self.kernel {
            KernelKind::Uniform => OmegaKind::Uniform,
            KernelKind::Tent => OmegaKind::Tent,
        };
        let adhesion = match self.adhesion {
            AdhesionKind::Identity => AdhesionFn::Identity,
        };
        InteractionKernel::new(omega, self.radius, adhesion)
    }

    pub fn domain(&self) -> adhesion_core::Result<SamplingDomain> {
        let (b0, bl) = if self.bc.is_wall() { self.betas() } else { (0.0, 0.0) };
        SamplingDomain::new(self.bc.boundary_kind(), self.length, self.radius, b0, bl)
    }

    /// Short name used for output directories.
    pub fn label(&self) -> String {
        let alpha = self.alpha.map_or_else(|| "unset".to_string(), |a| a.to_string());
        let mut s = format!("{}_alpha{}", self.bc.name(), alpha);
        if self.bc.is_wall() {
            let (b0, bl) = self.betas();
            if b0 == bl {
                s.push_str(&format!("_beta{b0}"));
            } else {
                s.push_str(&format!("_beta{b0}_{bl}"));
            }
        }
        if let Some(seed) = self.ic.seed {
            s.push_str(&format!("_seed{seed}"));
        }
        s
    }
}
