//! Benchmarks for the group-theory kernels; see `benches/kernels.rs`.
