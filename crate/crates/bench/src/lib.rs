//! Criterion benchmarks of the `kgcavity` engine; see `benches/engine.rs`.
//!
//! Run with `cargo bench -p kgcavity-bench`.
