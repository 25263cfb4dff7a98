#![allow(dead_code)]

use adhesion_core::analysis::Topology;
use adhesion_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const L: f64 = 5.0;
pub const R: f64 = 1.0;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn domain(kind: BoundaryKind, beta: f64) -> SamplingDomain {
    let beta = if kind == BoundaryKind::WallInteraction { beta } else { 0.0 };
    SamplingDomain::new(kind, L, R, beta, beta).unwrap()
}

pub fn topology(kind: BoundaryKind) -> Topology {
    if kind == BoundaryKind::Periodic {
        Topology::Periodic
    } else {
        Topology::Bounded
    }
}

pub const ALL_KINDS: [BoundaryKind; 4] =
    [BoundaryKind::Periodic, BoundaryKind::Naive, BoundaryKind::NoFlux, BoundaryKind::WallInteraction];

/// Non-negative field mixing a smooth part, a few bumps and cell noise.
pub fn random_field(rng: &mut StdRng, n: usize) -> Vec<f64> {
    let h = L / n as f64;
    let modes: Vec<(f64, f64, f64)> =
        (0..4).map(|m| (rng.random_range(-0.5..0.5), (m + 1) as f64, rng.random_range(0.0..6.3))).collect();
    let bumps: Vec<(f64, f64, f64)> =
        (0..3).map(|_| (rng.random_range(0.0..3.0), rng.random_range(0.0..L), rng.random_range(0.05..0.5))).collect();
    let noise = rng.random_range(0.0..0.5);
    (0..n)
        .map(|i| {
            let x = (i as f64 + 0.5) * h;
            let smooth: f64 =
                modes.iter().map(|&(a, m, p)| a * (2.0 * std::f64::consts::PI * m * x / L + p).cos()).sum();
            let bump: f64 = bumps.iter().map(|&(a, c, w)| a * (-((x - c) / w).powi(2)).exp()).sum();
            (1.0 + smooth + bump + noise * rng.random_range(-1.0..1.0)).max(0.0)
        })
        .collect()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}
