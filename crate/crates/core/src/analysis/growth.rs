//! Fitting the linear growth rate of a seeded Fourier mode.

use crate::discretization::State;

/// `(2/n) |sum_i (u_i - mean) e^{-i k x_i}|` with `x_i` the cell centres.
pub fn mode_amplitude(u: &[f64], k: f64, h: f64) -> f64 {
    let n = u.len() as f64;
    let mean = u.iter().sum::<f64>() / n;
    let (mut re, mut im) = (0.0, 0.0);
    for (i, &v) in u.iter().enumerate() {
        let x = (i as f64 + 0.5) * h;
        re += (v - mean) * (k * x).cos();
        im -= (v - mean) * (k * x).sin();
    }
    2.0 / n * re.hypot(im)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthFit {
    /// Amplitude reached `2 eps`; slope of `log A` over `[2 eps, 20 eps]`.
    Growing { rate: f64, t_start: f64, t_end: f64 },
    /// Amplitude never reached `2 eps`. `rate` is the fitted decay over
    /// `[eps/20, eps/2]` when the mode fell below `eps/2`.
    Stable { rate: Option<f64> },
}

impl GrowthFit {
    pub fn rate(&self) -> Option<f64> {
        match *self {
            GrowthFit::Growing { rate, .. } => Some(rate),
            GrowthFit::Stable { rate } => rate,
        }
    }
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 3 {
        return None;
    }
    let n = points.len() as f64;
    let (st, sy) = points.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mt, my) = (st / n, sy / n);
    let (mut num, mut den) = (0.0, 0.0);
    for &(t, y) in points {
        num += (t - mt) * (y - my);
        den += (t - mt) * (t - mt);
    }
    (den > 0.0).then(|| num / den)
}

/// Least-squares growth rate of mode `k` from a trajectory seeded with
/// amplitude `eps`.
pub fn measure_growth_rate(snapshots: &[State], k: f64, h: f64, eps: f64) -> GrowthFit {
    let amps: Vec<(f64, f64)> = snapshots.iter().map(|s| (s.t, mode_amplitude(&s.u, k, h))).collect();
    if let Some(first) = amps.iter().position(|&(_, a)| a >= 2.0 * eps) {
        let pts: Vec<(f64, f64)> = amps[first..]
            .iter()
            .take_while(|&&(_, a)| a <= 20.0 * eps)
            .map(|&(t, a)| (t, a.ln()))
            .collect();
        if let Some(rate) = slope(&pts) {
            return GrowthFit::Growing { rate, t_start: pts[0].0, t_end: pts[pts.len() - 1].0 };
        }
    }
    let rate = amps.iter().position(|&(_, a)| a <= 0.5 * eps).and_then(|first| {
        let pts: Vec<(f64, f64)> = amps[first..]
            .iter()
            .take_while(|&&(_, a)| a >= eps / 20.0)
            .map(|&(t, a)| (t, a.ln()))
            .collect();
        slope(&pts)
    });
    GrowthFit::Stable { rate }
}
