//! Criterion benchmarks for the fusionkit engine live in `benches/engine.rs`:
//! matrix-group closure, the `Aut(Γ)` scans, and chain posets.
