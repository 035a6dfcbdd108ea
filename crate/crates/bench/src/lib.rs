//! Criterion benchmarks for `sl2q-core`; see `benches/`.
