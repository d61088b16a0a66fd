//! Scenario files: the JSON surface between tooling and the pipeline, plus a
//! seeded synthetic-instance generator.
//!
//! A scenario pins everything a solve needs: the snapshot (nodes, directed
//! edges with metrics, couplings, time), the demand endpoints, and the
//! composite-cost mixing coefficients. Scenario numerics are `f64`, matching
//! JSON's number model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classical::dijkstra;
use crate::netgraph::{
    demand_vector, CompositeWeights, Demand, LinkMetrics, NetGraphError, WirelessGraph,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario does not parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("scenario is inconsistent: {0}")]
    Graph(#[from] NetGraphError),
    #[error("generation failed after {0} attempts (no source-destination path)")]
    GenerationFailed(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioEdge {
    pub tail: usize,
    pub head: usize,
    pub delay: f64,
    pub energy: f64,
    pub loss: f64,
    pub interference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioCoupling {
    pub a: usize,
    pub b: usize,
    pub gamma: f64,
}

/// On-disk problem instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub nodes: usize,
    pub edges: Vec<ScenarioEdge>,
    pub couplings: Vec<ScenarioCoupling>,
    pub source: usize,
    pub dest: usize,
    pub alpha: [f64; 4],
    pub time: f64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Validate and build the typed problem triple.
    pub fn build(
        &self,
    ) -> Result<(WirelessGraph<f64>, CompositeWeights<f64>, Demand), ScenarioError> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok((
                    e.tail,
                    e.head,
                    LinkMetrics::new(e.delay, e.energy, e.loss, e.interference)?,
                ))
            })
            .collect::<Result<Vec<_>, NetGraphError>>()?;
        let couplings: Vec<(usize, usize, f64)> =
            self.couplings.iter().map(|c| (c.a, c.b, c.gamma)).collect();
        let graph = WirelessGraph::new(self.nodes, edges, &couplings, self.time)?;
        let weights = CompositeWeights::new(self.alpha)?;
        let demand = demand_vector(self.source, self.dest, self.nodes)?;
        Ok((graph, weights, demand))
    }
}

/// Knobs for the synthetic generator. Metric ranges are uniform; delays stay
/// strictly positive so composite edge costs never collapse to zero.
#[derive(Debug, Clone)]
pub struct GenParams {
    pub nodes: usize,
    pub edge_prob: f64,
    pub coupling_prob: f64,
    pub delay_range: (f64, f64),
    pub energy_range: (f64, f64),
    pub loss_range: (f64, f64),
    pub interference_range: (f64, f64),
    pub gamma_range: (f64, f64),
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            nodes: 4,
            edge_prob: 0.5,
            coupling_prob: 0.2,
            delay_range: (0.5, 3.0),
            energy_range: (0.1, 1.0),
            loss_range: (0.0, 0.3),
            interference_range: (0.0, 1.0),
            gamma_range: (0.1, 1.0),
        }
    }
}

const MAX_GENERATION_ATTEMPTS: u32 = 1000;

/// Seeded random connected instance: directed edges drawn independently,
/// rejection-sampled until a `source -> dest` route exists. Deterministic
/// per seed.
pub fn generate(params: &GenParams, seed: u64) -> Result<Scenario, ScenarioError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (s, d) = (0, params.nodes.saturating_sub(1));
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let mut edges = Vec::new();
        for tail in 0..params.nodes {
            for head in 0..params.nodes {
                if tail == head || !rng.gen_bool(params.edge_prob.clamp(0.0, 1.0)) {
                    continue;
                }
                edges.push(ScenarioEdge {
                    tail,
                    head,
                    delay: sample_range(&mut rng, params.delay_range),
                    energy: sample_range(&mut rng, params.energy_range),
                    loss: sample_range(&mut rng, params.loss_range),
                    interference: sample_range(&mut rng, params.interference_range),
                });
            }
        }
        let mut couplings = Vec::new();
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                if rng.gen_bool(params.coupling_prob.clamp(0.0, 1.0)) {
                    couplings.push(ScenarioCoupling {
                        a,
                        b,
                        gamma: sample_range(&mut rng, params.gamma_range),
                    });
                }
            }
        }
        let scenario = Scenario {
            nodes: params.nodes,
            edges,
            couplings,
            source: s,
            dest: d,
            alpha: [1.0, 1.0, 1.0, 1.0],
            time: 0.0,
        };
        let Ok((graph, weights, _)) = scenario.build() else {
            continue;
        };
        if dijkstra(&graph, &weights, s, d).is_ok() {
            return Ok(scenario);
        }
    }
    Err(ScenarioError::GenerationFailed(MAX_GENERATION_ATTEMPTS))
}

fn sample_range(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi <= lo {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// The three-edge fixture used across tests and docs: `0 -> 1 -> 2` at unit
/// cost per hop against a direct `0 -> 2` edge of cost three.
pub fn triangle_scenario() -> Scenario {
    Scenario {
        nodes: 3,
        edges: vec![
            ScenarioEdge {
                tail: 0,
                head: 1,
                delay: 1.0,
                energy: 0.0,
                loss: 0.0,
                interference: 0.0,
            },
            ScenarioEdge {
                tail: 1,
                head: 2,
                delay: 1.0,
                energy: 0.0,
                loss: 0.0,
                interference: 0.0,
            },
            ScenarioEdge {
                tail: 0,
                head: 2,
                delay: 3.0,
                energy: 0.0,
                loss: 0.0,
                interference: 0.0,
            },
        ],
        couplings: vec![],
        source: 0,
        dest: 2,
        alpha: [1.0, 0.0, 0.0, 0.0],
        time: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_json() {
        let s = triangle_scenario();
        let text = s.to_json();
        let parsed = Scenario::from_json(&text).unwrap();
        assert_eq!(parsed, s);
        let (graph, _, demand) = parsed.build().unwrap();
        assert_eq!(graph.edge_count(), 3);
        assert_eq!(demand.b, vec![1, 0, -1]);
    }

    #[test]
    fn generated_scenarios_parse_and_validate() {
        let params = GenParams {
            nodes: 4,
            edge_prob: 0.6,
            ..Default::default()
        };
        let s = generate(&params, 1).unwrap();
        let text = s.to_json();
        let parsed = Scenario::from_json(&text).unwrap();
        parsed.build().unwrap();
        assert_eq!(parsed.source, 0);
        assert_eq!(parsed.dest, 3);
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let params = GenParams {
            nodes: 5,
            edge_prob: 0.5,
            ..Default::default()
        };
        let a = generate(&params, 9).unwrap().to_json();
        let b = generate(&params, 9).unwrap().to_json();
        assert_eq!(a, b);
        let c = generate(&params, 10).unwrap().to_json();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_edge_probability_cannot_generate() {
        let params = GenParams {
            nodes: 3,
            edge_prob: 0.0,
            ..Default::default()
        };
        assert!(matches!(
            generate(&params, 1),
            Err(ScenarioError::GenerationFailed(_))
        ));
    }

    #[test]
    fn malformed_scenarios_are_rejected() {
        assert!(Scenario::from_json("{not json").is_err());
        let mut s = triangle_scenario();
        s.source = 9;
        assert!(matches!(s.build(), Err(ScenarioError::Graph(_))));
        let mut s = triangle_scenario();
        s.alpha = [0.0; 4];
        assert!(matches!(s.build(), Err(ScenarioError::Graph(_))));
    }
}
