//! Criterion benchmarks for `tlc-core`; see `benches/core.rs`.
