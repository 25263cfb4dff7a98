//! Dispersion relation, growth-rate fits and trajectory diagnostics.

mod diagnostics;
mod dispersion;
mod growth;
mod peaks;
mod steady;

pub use diagnostics::{diagnostics, Diagnostics};
pub use dispersion::{bifurcation_alpha, dispersion_table, fastest_mode, growth_rate, mode_wavenumber, DispersionPoint};
pub use growth::{measure_growth_rate, mode_amplitude, GrowthFit};
pub use peaks::{peak_census, CensusOptions, Peak, PeakCensus, Topology};
pub use steady::{detect_steady, SteadyReport};
