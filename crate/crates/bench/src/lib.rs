//! Criterion benchmarks for the morsetilings pipeline live in `benches/`.
