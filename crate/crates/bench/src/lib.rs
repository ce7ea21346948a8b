//! Benchmarks for the torusgcd engine live in `benches/`.
