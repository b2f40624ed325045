//! Criterion benchmarks for the `parahoric` kernels; see `benches/kernels.rs`.
