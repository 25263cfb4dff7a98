use crate::discretization::State;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyReport {
    /// The trailing window at the end of the trajectory is steady.
    pub steady: bool,
    /// Earliest snapshot time from which every later window is steady.
    pub settling_time: Option<f64>,
}

/// Steady when the max-norm rate of change over the trailing `window` stays
/// below `tol * max|u|`.
pub fn detect_steady(snapshots: &[State], window: f64, tol: f64) -> SteadyReport {
    let n = snapshots.len();
    if n < 2 {
        return SteadyReport { steady: false, settling_time: None };
    }
    // rate[k]: change per unit time between snapshots k and k + 1
    let rate: Vec<f64> = snapshots
        .windows(2)
        .map(|w| {
            let dt = w[1].t - w[0].t;
            let d = w[0].u.iter().zip(&w[1].u).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if dt > 0.0 {
                d / dt
            } else {
                0.0
            }
        })
        .collect();
    let t0 = snapshots[0].t;
    let eps = 1e-12 * window.max(1.0);
    let steady_at = |i: usize| -> Option<bool> {
        let ti = snapshots[i].t;
        if ti < t0 + window - eps {
            return None;
        }
        let scale = snapshots[i].u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let worst = (0..i).filter(|&k| snapshots[k].t >= ti - window - eps).map(|k| rate[k]).fold(0.0, f64::max);
        Some(worst < tol * scale)
    };
    let flags: Vec<Option<bool>> = (0..n).map(steady_at).collect();
    let steady = flags[n - 1] == Some(true);
    let mut settling_time = None;
    if steady {
        let mut i = n - 1;
        while i > 0 && flags[i - 1] == Some(true) {
            i -= 1;
        }
        settling_time = Some(snapshots[i].t);
    }
    SteadyReport { steady, settling_time }
}
