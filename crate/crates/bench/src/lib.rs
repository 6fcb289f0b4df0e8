//! Benchmark-only crate; see `benches/degrees.rs`.
