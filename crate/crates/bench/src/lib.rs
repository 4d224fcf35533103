//! Benchmarks for the connective kernels live in `benches/`.
