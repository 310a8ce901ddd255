//! Criterion benchmarks for gpi-core; see `benches/engine.rs`.
