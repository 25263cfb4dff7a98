/// Cell averages at time `t`, with the mass recorded at the start of the run.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub t: f64,
    pub u: Vec<f64>,
    pub m0: f64,
}

impl State {
    pub fn new(t: f64, u: Vec<f64>, h: f64) -> Self {
        let m0 = h * u.iter().sum::<f64>();
        Self { t, u, m0 }
    }

    pub fn min(&self) -> f64 {
        self.u.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.u.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Semi-discrete time derivative `du/dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rhs {
    pub du_dt: Vec<f64>,
}
