//! Shared fixtures for the integration suites.

use qroute_core::netgraph::{CompositeWeights, LinkMetrics, WirelessGraph};
use qroute_core::scenario::{generate, GenParams, Scenario};

pub fn metrics(delay: f64) -> LinkMetrics<f64> {
    LinkMetrics::new(delay, 0.0, 0.0, 0.0).unwrap()
}

pub fn delay_only() -> CompositeWeights<f64> {
    CompositeWeights::new([1.0, 0.0, 0.0, 0.0]).unwrap()
}

/// Edges e0 = 0->1 (w 1), e1 = 1->2 (w 1), e2 = 0->2 (w 3).
pub fn triangle(couplings: &[(usize, usize, f64)]) -> WirelessGraph<f64> {
    WirelessGraph::new(
        3,
        vec![
            (0, 1, metrics(1.0)),
            (1, 2, metrics(1.0)),
            (0, 2, metrics(3.0)),
        ],
        couplings,
        0.0,
    )
    .unwrap()
}

/// Deterministic stream of small solvable scenarios with couplings, capped
/// at `max_edges` edges.
pub fn random_scenarios(count: usize, max_edges: usize, base_seed: u64) -> Vec<Scenario> {
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed;
    while out.len() < count {
        let params = GenParams {
            nodes: 3 + (seed % 4) as usize, // 3..=6
            edge_prob: 0.4,
            coupling_prob: 0.2,
            ..Default::default()
        };
        seed += 1;
        let Ok(scenario) = generate(&params, seed) else {
            continue;
        };
        if scenario.edges.len() <= max_edges {
            out.push(scenario);
        }
    }
    out
}

/// Report a criterion outcome on stdout and fail the test on error.
pub fn criterion(number: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {number} ({name}): PASS"),
        Err(message) => {
            println!("criterion {number} ({name}): FAIL - {message}");
            panic!("criterion {number} ({name}) failed: {message}");
        }
    }
}
