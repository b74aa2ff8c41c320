//! Benchmark-only crate; see the `benches/` directory.
//!
//! Shared fixtures for the benchmarks live here.

use topoq_core::{FiniteFunction, GridSpec};

/// Deterministic pseudo-random function table of the given shape.
pub fn scrambled_function(n: usize, m: usize) -> FiniteFunction {
    let domain = (0..n).map(|j| format!("x{j}")).collect();
    let codomain = (0..m).map(|i| format!("y{i}")).collect();
    // multiplicative hash spread, good enough for shape benchmarks
    let map = (0..n).map(|j| (j.wrapping_mul(2654435761) >> 7) % m).collect();
    FiniteFunction::from_labels(domain, codomain, map).expect("generated table is valid")
}

/// Uniform zero-based grid with unit spacing.
pub fn unit_grid(n: usize) -> GridSpec {
    GridSpec::uniform(n, 0.0, (n - 1) as f64).expect("valid grid")
}
