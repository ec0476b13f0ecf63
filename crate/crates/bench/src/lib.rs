//! Shared fixtures for the criterion benchmarks.

use twobridge::presentation::{normalize_two_bridge, TwoBridgeKnot};

/// Knots exercised by the benchmarks: a torus knot, the figure-eight and two larger hyperbolic knots.
pub fn bench_knots() -> Vec<TwoBridgeKnot> {
    [(7, 1), (5, 3), (11, 3), (15, 11)]
        .into_iter()
        .map(|(p, q)| normalize_two_bridge(p, q).expect("valid fraction"))
        .collect()
}
