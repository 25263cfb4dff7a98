/// Tridiagonal (optionally cyclic) matrix, stored by diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    /// `lower[i]` multiplies `y[i-1]`; `lower[0]` is the cyclic corner.
    lower: Vec<f64>,
    diag: Vec<f64>,
    /// `upper[i]` multiplies `y[i+1]`; `upper[n-1]` is the cyclic corner.
    upper: Vec<f64>,
    cyclic: bool,
}

impl Tridiagonal {
    pub fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>, cyclic: bool) -> Self {
        assert!(lower.len() == diag.len() && upper.len() == diag.len() && diag.len() >= 3);
        Self { lower, diag, upper, cyclic }
    }

    /// `coef * (y[i-1] - 2 y[i] + y[i+1])`, with zero-flux ends unless cyclic.
    pub fn laplacian(n: usize, coef: f64, cyclic: bool) -> Self {
        let mut lower = vec![coef; n];
        let mut diag = vec![-2.0 * coef; n];
        let mut upper = vec![coef; n];
        if !cyclic {
            lower[0] = 0.0;
            upper[n - 1] = 0.0;
            diag[0] = -coef;
            diag[n - 1] = -coef;
        }
        Self { lower, diag, upper, cyclic }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn apply(&self, y: &[f64], out: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let mut v = self.diag[i] * y[i];
            if i > 0 {
                v += self.lower[i] * y[i - 1];
            } else if self.cyclic {
                v += self.lower[0] * y[n - 1];
            }
            if i + 1 < n {
                v += self.upper[i] * y[i + 1];
            } else if self.cyclic {
                v += self.upper[n - 1] * y[0];
            }
            out[i] = v;
        }
    }

    /// Solves `(I - c A) x = b` in place (`b` is overwritten with `x`).
    pub fn solve_shifted(&self, c: f64, b: &mut [f64]) {
        let n = self.dim();
        let sub: Vec<f64> = self.lower.iter().map(|v| -c * v).collect();
        let sup: Vec<f64> = self.upper.iter().map(|v| -c * v).collect();
        let mut dia: Vec<f64> = self.diag.iter().map(|v| 1.0 - c * v).collect();
        if !self.cyclic {
            thomas(&sub, &dia, &sup, b);
            return;
        }
        // Sherman-Morrison on the cyclic corners
        let corner_lo = sup[n - 1]; // M[n-1][0]
        let corner_hi = sub[0]; // M[0][n-1]
        let gamma = -dia[0];
        dia[0] -= gamma;
        dia[n - 1] -= corner_lo * corner_hi / gamma;
        let mut z = vec![0.0; n];
        z[0] = gamma;
        z[n - 1] = corner_lo;
        thomas(&sub, &dia, &sup, b);
        thomas(&sub, &dia, &sup, &mut z);
        let fact = (b[0] + corner_hi * b[n - 1] / gamma) / (1.0 + z[0] + corner_hi * z[n - 1] / gamma);
        for (x, zi) in b.iter_mut().zip(&z) {
            *x -= fact * zi;
        }
    }
}

/// Thomas algorithm; ignores `sub[0]` and `sup[n-1]`.
fn thomas(sub: &[f64], dia: &[f64], sup: &[f64], rhs: &mut [f64]) {
    let n = dia.len();
    let mut c = vec![0.0; n];
    let mut beta = dia[0];
    rhs[0] /= beta;
    for i in 1..n {
        c[i] = sup[i - 1] / beta;
        beta = dia[i] - sub[i] * c[i];
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c[i + 1] * rhs[i + 1];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &Tridiagonal, c: f64, x: &[f64], b: &[f64]) -> f64 {
        let mut ax = vec![0.0; x.len()];
        a.apply(x, &mut ax);
        x.iter().zip(&ax).zip(b).map(|((xi, ai), bi)| (xi - c * ai - bi).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn solves_neumann_and_cyclic_systems() {
        for cyclic in [false, true] {
            let a = Tridiagonal::laplacian(37, 3.0, cyclic);
            let b: Vec<f64> = (0..37).map(|i| (i as f64 * 0.7).cos() + 0.1 * i as f64).collect();
            for c in [0.0, 1e-3, 0.5, 40.0] {
                let mut x = b.clone();
                a.solve_shifted(c, &mut x);
                assert!(residual(&a, c, &x, &b) < 1e-11, "cyclic={cyclic} c={c}");
            }
        }
    }

    #[test]
    fn shifted_solve_preserves_sum() {
        // columns of the Laplacian sum to zero, so (I - cA)^{-1} keeps the total
        for cyclic in [false, true] {
            let a = Tridiagonal::laplacian(50, 100.0, cyclic);
            let b: Vec<f64> = (0..50).map(|i| ((i * i) % 7) as f64).collect();
            let mut x = b.clone();
            a.solve_shifted(0.3, &mut x);
            let (sb, sx): (f64, f64) = (b.iter().sum(), x.iter().sum());
            assert!((sb - sx).abs() < 1e-11 * sb);
        }
    }
}
