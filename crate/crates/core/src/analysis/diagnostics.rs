use super::peaks::Topology;

/// Scalar summary of a density profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub mass: f64,
    pub l2_norm: f64,
    /// `(int u_x^2)^{1/2}` from interface differences.
    pub h1_seminorm: f64,
    pub max: f64,
    pub min: f64,
    pub left_value: f64,
    pub right_value: f64,
    pub finite: bool,
}

pub fn diagnostics(u: &[f64], h: f64, topology: Topology) -> Diagnostics {
    let n = u.len();
    let mass = h * u.iter().sum::<f64>();
    let l2_norm = (h * u.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let mut grad2: f64 = u.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum();
    if topology == Topology::Periodic && n > 1 {
        grad2 += (u[0] - u[n - 1]).powi(2);
    }
    let h1_seminorm = (grad2 / h).sqrt();
    let max = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = u.iter().copied().fold(f64::INFINITY, f64::min);
    let finite = u.iter().all(|v| v.is_finite()) && [mass, l2_norm, h1_seminorm].iter().all(|v| v.is_finite());
    Diagnostics {
        mass,
        l2_norm,
        h1_seminorm,
        max,
        min,
        left_value: u.first().copied().unwrap_or(f64::NAN),
        right_value: u.last().copied().unwrap_or(f64::NAN),
        finite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_profile() {
        let d = diagnostics(&vec![1.0; 640], 1.0 / 128.0, Topology::Bounded);
        assert!((d.mass - 5.0).abs() < 1e-12);
        assert_eq!(d.h1_seminorm, 0.0);
        assert!(d.finite);
    }

    #[test]
    fn cosine_l2_norm() {
        let h = 1.0 / 128.0;
        let u: Vec<f64> = (0..640).map(|i| 1.0 + (2.0 * PI * (i as f64 + 0.5) * h / 5.0).cos()).collect();
        let d = diagnostics(&u, h, Topology::Periodic);
        assert!((d.l2_norm.powi(2) - 7.5).abs() < 1e-4);
        // int u_x^2 = (2 pi / L)^2 L / 2
        let exact = ((2.0 * PI / 5.0).powi(2) * 2.5).sqrt();
        assert!((d.h1_seminorm - exact).abs() < 1e-4);
    }

    #[test]
    fn nan_is_flagged() {
        let d = diagnostics(&[1.0, f64::NAN, 1.0], 0.1, Topology::Bounded);
        assert!(!d.finite);
    }
}
