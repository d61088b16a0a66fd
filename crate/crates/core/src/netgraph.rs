//! Time-varying wireless network snapshots.
//!
//! A [`WirelessGraph`] is a directed weighted graph with per-link metrics
//! (delay, energy, loss, interference), optional pairwise interference
//! couplings between edges, and a snapshot time. Snapshots are immutable;
//! link updates produce new snapshots. The edge list order is the canonical
//! variable order for every downstream encoding, so bit `k` of any routing
//! bitstring always refers to edge `k` of the snapshot it was built from.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetGraphError {
    #[error("link metric out of range: {0}")]
    InvalidMetrics(&'static str),
    #[error("composite weights must be finite, nonnegative, and not all zero")]
    InvalidWeights,
    #[error("node {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("edge {edge} out of range for {edge_count} edges")]
    EdgeOutOfRange { edge: usize, edge_count: usize },
    #[error("source and destination coincide at node {0}")]
    SameSourceDest(usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate directed edge {tail}->{head}")]
    DuplicateEdge { tail: usize, head: usize },
    #[error("a graph snapshot needs at least one edge")]
    NoEdges,
    #[error("coupling on edge pair ({a},{b}) is invalid")]
    BadCoupling { a: usize, b: usize },
    #[error("snapshot time may not decrease")]
    TimeRegression,
    #[error("invalid snapshot time")]
    InvalidTime,
    #[error("path edges {prev} and {next} do not share head->tail")]
    NonContiguousPath { prev: usize, next: usize },
}

/// Per-link quality metrics. All abstract nonnegative units; `loss` is a
/// probability-like quantity in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkMetrics<T> {
    pub delay: T,
    pub energy: T,
    pub loss: T,
    pub interference: T,
}

impl<T: Scalar> LinkMetrics<T> {
    pub fn new(delay: T, energy: T, loss: T, interference: T) -> Result<Self, NetGraphError> {
        let nonneg = |v: T| v.is_finite() && v >= T::zero();
        if !nonneg(delay) {
            return Err(NetGraphError::InvalidMetrics(
                "delay must be finite and >= 0",
            ));
        }
        if !nonneg(energy) {
            return Err(NetGraphError::InvalidMetrics(
                "energy must be finite and >= 0",
            ));
        }
        if !(loss.is_finite() && loss >= T::zero() && loss <= T::one()) {
            return Err(NetGraphError::InvalidMetrics("loss must lie in [0, 1]"));
        }
        if !nonneg(interference) {
            return Err(NetGraphError::InvalidMetrics(
                "interference must be finite and >= 0",
            ));
        }
        Ok(Self {
            delay,
            energy,
            loss,
            interference,
        })
    }
}

/// Mixing coefficients of the composite link cost
/// `w = a1*delay + a2*energy + a3*loss + a4*interference`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeWeights<T> {
    pub alpha: [T; 4],
}

impl<T: Scalar> CompositeWeights<T> {
    pub fn new(alpha: [T; 4]) -> Result<Self, NetGraphError> {
        let valid = alpha.iter().all(|a| a.is_finite() && *a >= T::zero());
        let any_positive = alpha.iter().any(|a| *a > T::zero());
        if !valid || !any_positive {
            return Err(NetGraphError::InvalidWeights);
        }
        Ok(Self { alpha })
    }
}

/// Composite scalar cost of one link under the given mixing coefficients.
pub fn composite_edge_cost<T: Scalar>(m: &LinkMetrics<T>, w: &CompositeWeights<T>) -> T {
    w.alpha[0] * m.delay + w.alpha[1] * m.energy + w.alpha[2] * m.loss + w.alpha[3] * m.interference
}

/// A directed edge by endpoint indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

/// Immutable snapshot of a directed wireless graph.
#[derive(Debug, Clone)]
pub struct WirelessGraph<T> {
    node_count: usize,
    edges: Vec<(Edge, LinkMetrics<T>)>,
    /// Pairwise interference couplings keyed by canonical `(min, max)` edge
    /// index pairs.
    couplings: BTreeMap<(usize, usize), T>,
    time: T,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl<T: Scalar> WirelessGraph<T> {
    /// Build a validated snapshot. Edge list order is preserved and becomes
    /// the canonical variable order for all encodings built on top.
    pub fn new(
        node_count: usize,
        edges: Vec<(usize, usize, LinkMetrics<T>)>,
        couplings: &[(usize, usize, T)],
        time: T,
    ) -> Result<Self, NetGraphError> {
        if edges.is_empty() {
            return Err(NetGraphError::NoEdges);
        }
        if !(time.is_finite() && time >= T::zero()) {
            return Err(NetGraphError::InvalidTime);
        }
        let mut seen = BTreeMap::new();
        let mut out_edges = vec![Vec::new(); node_count];
        let mut in_edges = vec![Vec::new(); node_count];
        let mut stored = Vec::with_capacity(edges.len());
        for (idx, (tail, head, metrics)) in edges.into_iter().enumerate() {
            if tail >= node_count {
                return Err(NetGraphError::NodeOutOfRange {
                    node: tail,
                    node_count,
                });
            }
            if head >= node_count {
                return Err(NetGraphError::NodeOutOfRange {
                    node: head,
                    node_count,
                });
            }
            if tail == head {
                return Err(NetGraphError::SelfLoop(tail));
            }
            if seen.insert((tail, head), idx).is_some() {
                return Err(NetGraphError::DuplicateEdge { tail, head });
            }
            out_edges[tail].push(idx);
            in_edges[head].push(idx);
            stored.push((Edge { tail, head }, metrics));
        }
        let edge_count = stored.len();
        let mut coupling_map = BTreeMap::new();
        for &(a, b, gamma) in couplings {
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == hi || hi >= edge_count || !gamma.is_finite() || gamma < T::zero() {
                return Err(NetGraphError::BadCoupling { a, b });
            }
            *coupling_map.entry((lo, hi)).or_insert_with(T::zero) += gamma;
        }
        Ok(Self {
            node_count,
            edges: stored,
            couplings: coupling_map,
            time,
            out_edges,
            in_edges,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, idx: usize) -> Result<Edge, NetGraphError> {
        self.edges
            .get(idx)
            .map(|(e, _)| *e)
            .ok_or(NetGraphError::EdgeOutOfRange {
                edge: idx,
                edge_count: self.edges.len(),
            })
    }

    pub fn metrics(&self, idx: usize) -> Result<&LinkMetrics<T>, NetGraphError> {
        self.edges
            .get(idx)
            .map(|(_, m)| m)
            .ok_or(NetGraphError::EdgeOutOfRange {
                edge: idx,
                edge_count: self.edges.len(),
            })
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, &LinkMetrics<T>)> {
        self.edges.iter().map(|(e, m)| (*e, m))
    }

    pub fn couplings(&self) -> &BTreeMap<(usize, usize), T> {
        &self.couplings
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out_edges[node]
    }

    pub fn in_edges(&self, node: usize) -> &[usize] {
        &self.in_edges[node]
    }

    /// Composite cost of edge `idx` under `w`.
    pub fn edge_cost(&self, idx: usize, w: &CompositeWeights<T>) -> Result<T, NetGraphError> {
        Ok(composite_edge_cost(self.metrics(idx)?, w))
    }

    /// Sum of all composite edge costs; used to scale penalty weights.
    pub fn total_edge_cost(&self, w: &CompositeWeights<T>) -> T {
        self.edges
            .iter()
            .map(|(_, m)| composite_edge_cost(m, w))
            .sum()
    }

    /// Sum of all declared interference couplings.
    pub fn total_coupling(&self) -> T {
        self.couplings.values().copied().sum()
    }

    /// Cost of an ordered walk: composite edge costs plus every declared
    /// coupling whose two edges both appear on the walk.
    pub fn path_cost(&self, w: &CompositeWeights<T>, path: &[usize]) -> Result<T, NetGraphError> {
        let mut cost = T::zero();
        for (pos, &idx) in path.iter().enumerate() {
            let edge = self.edge(idx)?;
            if pos > 0 {
                let prev = self.edge(path[pos - 1])?;
                if prev.head != edge.tail {
                    return Err(NetGraphError::NonContiguousPath {
                        prev: path[pos - 1],
                        next: idx,
                    });
                }
            }
            cost += self.edge_cost(idx, w)?;
        }
        let mut on_path: Vec<usize> = path.to_vec();
        on_path.sort_unstable();
        on_path.dedup();
        for (&(a, b), &gamma) in &self.couplings {
            if on_path.binary_search(&a).is_ok() && on_path.binary_search(&b).is_ok() {
                cost += gamma;
            }
        }
        Ok(cost)
    }

    /// Check whether a set of edge indices forms exactly one simple directed
    /// `s -> d` path with no extra edges, and recover its order if so.
    pub fn validate_path(
        &self,
        selected: &[usize],
        s: usize,
        d: usize,
    ) -> Result<PathValidation, NetGraphError> {
        if s >= self.node_count {
            return Err(NetGraphError::NodeOutOfRange {
                node: s,
                node_count: self.node_count,
            });
        }
        if d >= self.node_count {
            return Err(NetGraphError::NodeOutOfRange {
                node: d,
                node_count: self.node_count,
            });
        }
        if s == d {
            return Err(NetGraphError::SameSourceDest(s));
        }
        let mut chosen = vec![false; self.edge_count()];
        for &idx in selected {
            if idx >= self.edge_count() {
                return Err(NetGraphError::EdgeOutOfRange {
                    edge: idx,
                    edge_count: self.edge_count(),
                });
            }
            chosen[idx] = true;
        }
        let count = chosen.iter().filter(|&&c| c).count();
        if count == 0 {
            return Ok(PathValidation::Invalid(InvalidPathReason::Empty));
        }

        let mut out_deg = vec![0usize; self.node_count];
        let mut in_deg = vec![0usize; self.node_count];
        for (idx, &on) in chosen.iter().enumerate() {
            if on {
                let e = self.edges[idx].0;
                out_deg[e.tail] += 1;
                in_deg[e.head] += 1;
            }
        }
        if out_deg.iter().any(|&deg| deg > 1) || in_deg.iter().any(|&deg| deg > 1) {
            return Ok(PathValidation::Invalid(InvalidPathReason::Branching));
        }
        if out_deg[s] != 1 || in_deg[s] != 0 || in_deg[d] != 1 || out_deg[d] != 0 {
            return Ok(PathValidation::Invalid(InvalidPathReason::WrongEndpoints));
        }

        // With all degrees <= 1 and in(s) = 0 the chain from s cannot revisit
        // a node, so this walk terminates.
        let mut ordered = Vec::with_capacity(count);
        let mut cur = s;
        loop {
            let next = self.out_edges[cur].iter().copied().find(|&e| chosen[e]);
            match next {
                Some(e) => {
                    ordered.push(e);
                    chosen[e] = false;
                    cur = self.edges[e].0.head;
                }
                None => break,
            }
        }
        if cur != d {
            return Ok(PathValidation::Invalid(InvalidPathReason::Disconnected));
        }
        if ordered.len() < count {
            // Leftover edges are chains (some endpoint degree mismatch) or
            // closed cycles (every touched node has one in and one out).
            let mut leftover_out = vec![0usize; self.node_count];
            let mut leftover_in = vec![0usize; self.node_count];
            for (idx, &on) in chosen.iter().enumerate() {
                if on {
                    let e = self.edges[idx].0;
                    leftover_out[e.tail] += 1;
                    leftover_in[e.head] += 1;
                }
            }
            let balanced = (0..self.node_count).all(|v| leftover_out[v] == leftover_in[v]);
            return Ok(PathValidation::Invalid(if balanced {
                InvalidPathReason::ContainsCycle
            } else {
                InvalidPathReason::Disconnected
            }));
        }
        Ok(PathValidation::Valid(ordered))
    }

    /// New snapshot with one link's metrics replaced and the clock advanced.
    pub fn apply_link_update(
        &self,
        edge: usize,
        metrics: LinkMetrics<T>,
        time: T,
    ) -> Result<Self, NetGraphError> {
        if edge >= self.edge_count() {
            return Err(NetGraphError::EdgeOutOfRange {
                edge,
                edge_count: self.edge_count(),
            });
        }
        if !time.is_finite() || time < T::zero() {
            return Err(NetGraphError::InvalidTime);
        }
        if time < self.time {
            return Err(NetGraphError::TimeRegression);
        }
        let mut next = self.clone();
        next.edges[edge].1 = metrics;
        next.time = time;
        Ok(next)
    }
}

/// Outcome of [`WirelessGraph::validate_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathValidation {
    /// The selected edges form exactly one simple `s -> d` path, returned in
    /// traversal order.
    Valid(Vec<usize>),
    Invalid(InvalidPathReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvalidPathReason {
    Empty,
    Branching,
    Disconnected,
    ContainsCycle,
    WrongEndpoints,
}

impl std::fmt::Display for InvalidPathReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            InvalidPathReason::Empty => "empty",
            InvalidPathReason::Branching => "branching",
            InvalidPathReason::Disconnected => "disconnected",
            InvalidPathReason::ContainsCycle => "contains_cycle",
            InvalidPathReason::WrongEndpoints => "wrong_endpoints",
        };
        f.write_str(name)
    }
}

/// Unit source-destination demand: `b[s] = 1`, `b[d] = -1`, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand {
    pub source: usize,
    pub dest: usize,
    pub b: Vec<i32>,
}

/// Build the per-node net-flow vector for a single unit of demand.
pub fn demand_vector(s: usize, d: usize, node_count: usize) -> Result<Demand, NetGraphError> {
    if s >= node_count {
        return Err(NetGraphError::NodeOutOfRange {
            node: s,
            node_count,
        });
    }
    if d >= node_count {
        return Err(NetGraphError::NodeOutOfRange {
            node: d,
            node_count,
        });
    }
    if s == d {
        return Err(NetGraphError::SameSourceDest(s));
    }
    let mut b = vec![0i32; node_count];
    b[s] = 1;
    b[d] = -1;
    Ok(Demand {
        source: s,
        dest: d,
        b,
    })
}
