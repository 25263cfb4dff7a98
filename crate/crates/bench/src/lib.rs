//! Benchmarks for the non-local adhesion solver live in `benches/`.
