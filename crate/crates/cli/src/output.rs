//! CSV writers. Numbers are written with 17 significant digits.

use adhesion_core::{Grid, State};
use std::io::{self, BufWriter, Write};
use std::path::Path;

fn create(path: &Path) -> io::Result<BufWriter<std::fs::File>> {
    Ok(BufWriter::new(std::fs::File::create(path)?))
}

/// Header `t,x_0,...,x_{n-1}` (cell centres), then one row per snapshot.
pub fn write_kymograph(path: &Path, grid: &Grid, snapshots: &[State]) -> io::Result<()> {
    let mut w = create(path)?;
    write!(w, "t")?;
    for x in grid.centers() {
        write!(w, ",{x:.16e}")?;
    }
    writeln!(w)?;
    for s in snapshots {
        write!(w, "{:.16e}", s.t)?;
        for v in &s.u {
            write!(w, ",{v:.16e}")?;
        }
        writeln!(w)?;
    }
    w.flush()
}

/// Two columns `x,u`.
pub fn write_profile(path: &Path, grid: &Grid, u: &[f64]) -> io::Result<()> {
    let mut w = create(path)?;
    writeln!(w, "x,u")?;
    for (x, v) in grid.centers().iter().zip(u) {
        writeln!(w, "{x:.16e},{v:.16e}")?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kymograph_layout() {
        let grid = adhesion_core::build_grid(1.0, 8, 0.125).unwrap();
        let snaps = vec![State::new(0.0, vec![1.0; 8], 0.125), State::new(0.5, (0..8).map(f64::from).collect(), 0.125)];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k.csv");
        write_kymograph(&path, &grid, &snaps).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let header: Vec<&str> = lines[0].split(',').collect();
        assert_eq!(header[0], "t");
        assert_eq!(header.len(), 9);
        assert_eq!(header[1].parse::<f64>().unwrap(), 0.0625);
        assert_eq!(header[1], "6.2500000000000000e-2");
        let row: Vec<f64> = lines[2].split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(row[0], 0.5);
        assert_eq!(&row[1..], &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn values_round_trip_exactly() {
        let grid = adhesion_core::build_grid(1.0, 8, 0.125).unwrap();
        let u: Vec<f64> = (0..8).map(|i| (i as f64 * 0.1).exp() / 3.0).collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        write_profile(&path, &grid, &u).unwrap();
        let back = crate::ic::read_profile(&path).unwrap();
        assert_eq!(back, u);
    }
}
