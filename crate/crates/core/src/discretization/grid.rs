use crate::error::{Error, Result};

/// Uniform cell-centred mesh of `[0, L]`.
///
/// Cell `i` (0-based) has centre `(i + 1/2) h`; interface `j` sits at `j h`,
/// so interface `j` separates cells `j - 1` and `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    length: f64,
    n_per_unit: usize,
    n_cells: usize,
    h: f64,
    radius_cells: usize,
}

pub fn build_grid(length: f64, n_per_unit: usize, radius: f64) -> Result<Grid> {
    Grid::new(length, n_per_unit, radius)
}

fn as_integer(value: f64) -> Option<usize> {
    let r = value.round();
    if r >= 0.0 && (value - r).abs() <= 1e-9 * value.abs().max(1.0) {
        Some(r as usize)
    } else {
        None
    }
}

impl Grid {
    pub fn new(length: f64, n_per_unit: usize, radius: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::invalid("L", format!("domain length must be positive, got {length}")));
        }
        if n_per_unit < 8 {
            return Err(Error::invalid("n_per_unit", format!("need at least 8 cells per unit length, got {n_per_unit}")));
        }
        if !(radius > 0.0) {
            return Err(Error::invalid("R", format!("sensing radius must be positive, got {radius}")));
        }
        let n_cells = as_integer(length * n_per_unit as f64).ok_or_else(|| {
            Error::invalid("L", format!("L * n_per_unit must be an integer, got {}", length * n_per_unit as f64))
        })?;
        let radius_cells = as_integer(radius * n_per_unit as f64).ok_or_else(|| {
            Error::invalid(
                "R",
                format!(
                    "R * n_per_unit must be an integer so the sensing radius aligns with the mesh, got {} * {} = {}",
                    radius,
                    n_per_unit,
                    radius * n_per_unit as f64
                ),
            )
        })?;
        if n_cells < 4 * radius_cells {
            return Err(Error::invalid(
                "L",
                format!("need at least 4 R/h = {} cells, got {n_cells}", 4 * radius_cells),
            ));
        }
        Ok(Self { length, n_per_unit, n_cells, h: 1.0 / n_per_unit as f64, radius_cells })
    }

    pub fn length(&self) -> f64 {
        self.length
    }
    pub fn n_per_unit(&self) -> usize {
        self.n_per_unit
    }
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
    pub fn n_interfaces(&self) -> usize {
        self.n_cells + 1
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    /// Sensing radius in cells, `R / h`.
    pub fn radius_cells(&self) -> usize {
        self.radius_cells
    }
    pub fn radius(&self) -> f64 {
        self.radius_cells as f64 * self.h
    }

    pub fn center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h
    }

    pub fn interface(&self, j: usize) -> f64 {
        j as f64 * self.h
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }

    pub fn interfaces(&self) -> Vec<f64> {
        (0..=self.n_cells).map(|j| self.interface(j)).collect()
    }

    /// `h * sum(u)`.
    pub fn mass(&self, u: &[f64]) -> f64 {
        self.h * u.iter().sum::<f64>()
    }
}
