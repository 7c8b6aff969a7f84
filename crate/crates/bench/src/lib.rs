//! Criterion benchmarks for `mathieu-core`; see `benches/numerics.rs`.
