//! Benchmark fixtures.

use energy_bounds::{generate, Graph};

pub fn graph(spec: &str) -> Graph {
    generate(&spec.parse().expect("valid spec")).expect("buildable spec")
}
