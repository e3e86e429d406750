//! Benchmark-only crate; see `benches/pricing.rs`.
