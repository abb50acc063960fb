//! Benchmarks live under `benches/`; this crate exports nothing.
