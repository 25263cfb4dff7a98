//! Peak census via topographic prominence.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    Periodic,
    Bounded,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CensusOptions {
    /// Minimum prominence as a fraction of `max u - min u`.
    pub min_prominence: f64,
    /// Profiles whose range is below this absolute value have no peaks.
    pub flat_tolerance: f64,
    pub topology: Topology,
}

impl CensusOptions {
    pub fn new(topology: Topology) -> Self {
        Self { min_prominence: 0.1, flat_tolerance: 1e-3, topology }
    }

    pub fn with_min_prominence(mut self, p: f64) -> Self {
        self.min_prominence = p;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub location: f64,
    pub prominence: f64,
}

/// Interior peaks plus the half-peaks sitting on the walls.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PeakCensus {
    pub count: usize,
    pub locations: Vec<f64>,
    pub prominences: Vec<f64>,
    pub left_wall: Option<Peak>,
    pub right_wall: Option<Peak>,
}

impl PeakCensus {
    pub fn half_peaks(&self) -> usize {
        self.left_wall.is_some() as usize + self.right_wall.is_some() as usize
    }
}

struct RawPeak {
    first: usize,
    last: usize,
    value: f64,
    /// Lowest point between the peak and the nearest higher point (or the
    /// edge) on each side; `None` when the peak touches that edge.
    left_base: Option<f64>,
    right_base: Option<f64>,
    /// No higher point exists on that side.
    left_open: bool,
    right_open: bool,
}

impl RawPeak {
    fn prominence(&self) -> f64 {
        let base = match (self.left_base, self.right_base) {
            (Some(l), Some(r)) => l.max(r),
            (Some(b), None) | (None, Some(b)) => b,
            (None, None) => self.value,
        };
        self.value - base
    }
}

/// Local maxima of `u`; plateaus count once.
fn raw_peaks(u: &[f64]) -> Vec<RawPeak> {
    let n = u.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && u[j + 1] == u[i] {
            j += 1;
        }
        let left_ok = i == 0 || u[i - 1] < u[i];
        let right_ok = j == n - 1 || u[j + 1] < u[i];
        if left_ok && right_ok && !(i == 0 && j == n - 1) {
            let v = u[i];
            let mut left_base = None;
            let mut k = i;
            while k > 0 && u[k - 1] <= v {
                k -= 1;
                left_base = Some(left_base.map_or(u[k], |b: f64| b.min(u[k])));
            }
            let left_open = k == 0;
            let mut right_base = None;
            let mut k = j;
            while k + 1 < n && u[k + 1] <= v {
                k += 1;
                right_base = Some(right_base.map_or(u[k], |b: f64| b.min(u[k])));
            }
            let right_open = k == n - 1;
            out.push(RawPeak { first: i, last: j, value: v, left_base, right_base, left_open, right_open });
        }
        i = j + 1;
    }
    out
}

/// Peak census of cell values `u` on cells of width `h`.
pub fn peak_census(u: &[f64], h: f64, opts: &CensusOptions) -> PeakCensus {
    let n = u.len();
    let mut census = PeakCensus::default();
    if n < 3 {
        return census;
    }
    let (lo, hi) = u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let range = hi - lo;
    if !(range >= opts.flat_tolerance) {
        return census;
    }
    let threshold = opts.min_prominence * range;
    let center = |a: usize, b: usize| (0.5 * (a + b) as f64 + 0.5) * h;

    match opts.topology {
        Topology::Bounded => {
            for p in raw_peaks(u) {
                // a maximum separated from a wall only by a sub-threshold lip
                // is a wall maximum
                let left_lip = p.left_open && p.left_base.is_none_or(|b| p.value - b < threshold);
                let right_lip = p.right_open && p.right_base.is_none_or(|b| p.value - b < threshold);
                if left_lip && right_lip {
                    continue;
                }
                if left_lip || right_lip {
                    let inward = if left_lip { p.right_base } else { p.left_base };
                    let prom = p.value - inward.unwrap_or(p.value);
                    if prom < threshold {
                        continue;
                    }
                    let index = (p.first + p.last) / 2;
                    if left_lip {
                        census.left_wall = Some(Peak { index, location: 0.0, prominence: prom });
                    } else {
                        census.right_wall = Some(Peak { index, location: n as f64 * h, prominence: prom });
                    }
                    continue;
                }
                let prom = p.prominence();
                if prom >= threshold {
                    census.locations.push(center(p.first, p.last));
                    census.prominences.push(prom);
                }
            }
        }
        Topology::Periodic => {
            // start (and end) at the global minimum so no peak straddles the seam
            let start = (0..n).min_by(|&a, &b| u[a].total_cmp(&u[b])).unwrap();
            let mut rotated: Vec<f64> = (0..n).map(|i| u[(start + i) % n]).collect();
            rotated.push(u[start]);
            let length = n as f64 * h;
            for p in raw_peaks(&rotated) {
                let prom = p.prominence();
                if prom < threshold || p.first == 0 || p.last == n {
                    continue;
                }
                let loc = (center(p.first, p.last) + start as f64 * h).rem_euclid(length);
                census.locations.push(loc);
                census.prominences.push(prom);
            }
        }
    }
    if opts.topology == Topology::Periodic {
        let mut pairs: Vec<(f64, f64)> = census.locations.iter().copied().zip(census.prominences.iter().copied()).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        (census.locations, census.prominences) = pairs.into_iter().unzip();
    }
    census.count = census.locations.len();
    census
}
