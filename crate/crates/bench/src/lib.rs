//! Criterion benchmarks for `signrule`; see `benches/`.
