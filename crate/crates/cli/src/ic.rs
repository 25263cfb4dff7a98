//! Seeded initial data.
//!
//! Normal deviates come from ChaCha20 (`rand_chacha`, seeded through
//! `seed_from_u64`) via Box-Muller: each pair of 53-bit uniforms
//! `(U1, U2)` in (0, 1) yields `sqrt(-2 ln U1) cos(2 pi U2)` and then
//! `sqrt(-2 ln U1) sin(2 pi U2)`.

use crate::config::{ConfigError, RunConfig};
use adhesion_core::State;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::f64::consts::PI;
use std::path::Path;

pub const RNG_NAME: &str = "ChaCha20 (rand_chacha seed_from_u64) + Box-Muller";

pub struct NormalStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha20Rng::seed_from_u64(seed), spare: None }
    }

    /// Uniform in the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let (u1, u2) = (self.uniform(), self.uniform());
        let r = (-2.0 * u1.ln()).sqrt();
        self.spare = Some(r * (2.0 * PI * u2).sin());
        r * (2.0 * PI * u2).cos()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitialCondition {
    pub state: State,
    pub clipped: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum IcError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("cannot read initial data {path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("initial data {path}, line {line}: cannot parse `{text}`")]
    Parse { path: String, line: usize, text: String },
    #[error("initial data {path} has {actual} values, grid has {expected} cells")]
    Length { path: String, expected: usize, actual: usize },
}

/// Reads one value per line, or the last column of a CSV with an optional
/// header (such as a `profile.csv`).
pub fn read_profile(path: &Path) -> Result<Vec<f64>, IcError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|error| IcError::Io { path: name.clone(), error })?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.rsplit([',', ' ', '\t']).next().unwrap_or(line);
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(IcError::Parse { path: name, line: i + 1, text: line.to_string() }),
        }
    }
    Ok(values)
}

fn clip(u: &mut [f64]) -> usize {
    let mut clipped = 0;
    for v in u.iter_mut() {
        if *v < 0.0 || v.is_nan() {
            *v = 0.0;
            clipped += 1;
        }
    }
    clipped
}

pub fn make_initial_condition(config: &RunConfig) -> Result<InitialCondition, IcError> {
    let n = config.n_cells();
    let h = config.h();
    let spec = &config.ic;
    let mut u = if let Some(path) = &spec.file {
        let u = read_profile(path)?;
        if u.len() != n {
            return Err(IcError::Length { path: path.display().to_string(), expected: n, actual: u.len() });
        }
        u
    } else {
        let k = 2.0 * PI * spec.mode as f64 / config.length;
        let mut u: Vec<f64> =
            (0..n).map(|i| spec.mean + spec.mode_amplitude * (k * (i as f64 + 0.5) * h).cos()).collect();
        if spec.noise_amplitude > 0.0 {
            let seed = spec.seed.ok_or(ConfigError::Missing("ic.seed"))?;
            let mut xi = NormalStream::new(seed);
            for v in u.iter_mut() {
                *v += spec.noise_amplitude * xi.next_normal();
            }
        }
        u
    };
    let clipped = clip(&mut u);
    if clipped > 0 {
        log::warn!("initial data: clipped {clipped} of {n} negative cells to 0");
    }
    Ok(InitialCondition { state: State::new(0.0, u, h), clipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::IcSpec;

    fn config(ic: IcSpec) -> RunConfig {
        RunConfig { alpha: Some(1.0), ic, ..RunConfig::default() }
    }

    #[test]
    fn noiseless_is_constant() {
        let ic = make_initial_condition(&config(IcSpec { noise_amplitude: 0.0, seed: Some(3), ..IcSpec::default() }))
            .unwrap();
        assert!(ic.state.u.iter().all(|&v| v == 1.0));
        assert!((ic.state.m0 - 5.0).abs() < 1e-12);
        assert_eq!(ic.clipped, 0);
    }

    #[test]
    fn same_seed_same_field() {
        let c = config(IcSpec { seed: Some(42), ..IcSpec::default() });
        let a = make_initial_condition(&c).unwrap();
        let b = make_initial_condition(&c).unwrap();
        assert_eq!(a, b);
        let other = make_initial_condition(&config(IcSpec { seed: Some(43), ..IcSpec::default() })).unwrap();
        assert_ne!(a.state.u, other.state.u);
    }

    #[test]
    fn clipped_fraction_matches_gaussian_tail() {
        for seed in 0..20 {
            let ic = make_initial_condition(&config(IcSpec { seed: Some(seed), ..IcSpec::default() })).unwrap();
            let frac = ic.clipped as f64 / 640.0;
            assert!((frac - 0.1587).abs() <= 0.05, "seed {seed}: {frac}");
            assert!(ic.state.u.iter().all(|&v| v >= 0.0));
            let mass: f64 = ic.state.u.iter().sum::<f64>() / 128.0;
            assert_eq!(ic.state.m0, mass);
        }
    }

    #[test]
    fn normal_stream_moments() {
        let mut s = NormalStream::new(1);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| s.next_normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01 && (var - 1.0).abs() < 0.01, "{mean} {var}");
    }

    #[test]
    fn single_mode_seed() {
        let ic = make_initial_condition(&config(IcSpec {
            noise_amplitude: 0.0,
            mode: 1,
            mode_amplitude: 1e-3,
            ..IcSpec::default()
        }))
        .unwrap();
        assert!((ic.state.u[0] - (1.0 + 1e-3 * (PI / 640.0).cos())).abs() < 1e-15);
    }

    #[test]
    fn file_length_is_checked() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        std::fs::write(&path, "x,u\n0.1,1.0\n0.2,-2.0\n").unwrap();
        assert_eq!(read_profile(&path).unwrap(), vec![1.0, -2.0]);
        let c = config(IcSpec { file: Some(path), ..IcSpec::default() });
        assert!(matches!(make_initial_condition(&c), Err(IcError::Length { expected: 640, actual: 2, .. })));
    }
}
