//! Criterion benchmarks for cyclicount; see `benches/`.
