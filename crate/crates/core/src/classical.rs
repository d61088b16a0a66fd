//! Classical baselines and exact oracles: shortest path, exhaustive ground
//! state, exhaustive best path, and solution-quality metrics.
//!
//! The shortest-path baseline deliberately ignores pairwise interference
//! couplings (it is an additive algorithm); the exhaustive path search
//! prices them in. The gap between the two on coupled instances is exactly
//! what the penalized Hamiltonian encodings capture. Every routine carries a
//! work counter (states expanded or configurations evaluated) so end-to-end
//! accounting can weigh classical effort.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::encoding::QuboModel;
use crate::netgraph::{CompositeWeights, WirelessGraph};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("no source-destination path exists")]
    NoPathExists,
    #[error("{0} variables exceed the exhaustive enumeration bound")]
    TooManyVariables(usize),
    #[error("optimal cost must be positive")]
    InvalidOptimum,
    #[error("candidate cost below the proven optimum signals an infeasible comparison")]
    InfeasibleCandidate,
}

/// A baseline route with its cost and the work spent finding it.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult<T> {
    pub path: Vec<usize>,
    pub cost: T,
    /// States expanded (shortest path) or configurations evaluated
    /// (exhaustive searches).
    pub work: u64,
}

struct HeapEntry<T> {
    dist: T,
    node: usize,
    pred_edge: usize,
}

impl<T: Scalar> PartialEq for HeapEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for HeapEntry<T> {}
impl<T: Scalar> PartialOrd for HeapEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for HeapEntry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap by distance, then by predecessor edge index for
        // deterministic tie-breaking. Costs are finite by construction.
        other
            .dist
            .partial_cmp(&self.dist)
            .expect("finite distances")
            .then_with(|| other.pred_edge.cmp(&self.pred_edge))
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Additive shortest path under composite edge costs. Interference
/// couplings are ignored by design; compare with
/// [`brute_force_best_path`] to expose the non-additive gap.
pub fn dijkstra<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
) -> Result<BaselineResult<T>, ClassicalError> {
    let n = graph.node_count();
    let mut dist: Vec<T> = vec![T::infinity(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut work = 0u64;

    dist[s] = T::zero();
    heap.push(HeapEntry {
        dist: T::zero(),
        node: s,
        pred_edge: usize::MAX,
    });
    while let Some(HeapEntry {
        dist: du, node: u, ..
    }) = heap.pop()
    {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        work += 1;
        if u == d {
            break;
        }
        for &edge in graph.out_edges(u) {
            let head = graph.edge(edge).expect("live edge").head;
            if settled[head] {
                continue;
            }
            let cost = graph.edge_cost(edge, weights).expect("live edge");
            let candidate = du + cost;
            let better = candidate < dist[head]
                || (candidate == dist[head] && pred[head].map(|p| edge < p).unwrap_or(false));
            if better {
                dist[head] = candidate;
                pred[head] = Some(edge);
                heap.push(HeapEntry {
                    dist: candidate,
                    node: head,
                    pred_edge: edge,
                });
            }
        }
    }
    if !dist[d].is_finite() {
        return Err(ClassicalError::NoPathExists);
    }
    let mut path = Vec::new();
    let mut cur = d;
    while cur != s {
        let edge = pred[cur].expect("reachable nodes have predecessors");
        path.push(edge);
        cur = graph.edge(edge).expect("live edge").tail;
    }
    path.reverse();
    Ok(BaselineResult {
        path,
        cost: dist[d],
        work,
    })
}

/// Exhaustive enumeration of all `2^n` configurations: every minimizer plus
/// the minimum energy.
pub fn brute_force_ground_state<T: Scalar>(
    model: &QuboModel<T>,
) -> Result<(Vec<usize>, T), ClassicalError> {
    let n = model.num_vars();
    if n > 24 {
        return Err(ClassicalError::TooManyVariables(n));
    }
    let mut best = T::infinity();
    let mut minimizers = Vec::new();
    for bits in 0..1usize << n {
        let e = model.energy(bits).expect("bits in range");
        if e < best {
            best = e;
            minimizers.clear();
            minimizers.push(bits);
        } else if e == best {
            minimizers.push(bits);
        }
    }
    Ok((minimizers, best))
}

/// Exhaustive simple-path search minimizing the full path cost, couplings
/// included. Ties resolve to the lexicographically smallest edge sequence,
/// which the ordered depth-first enumeration visits first.
pub fn brute_force_best_path<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
) -> Result<BaselineResult<T>, ClassicalError> {
    let mut visited = vec![false; graph.node_count()];
    visited[s] = true;
    let mut stack = Vec::new();
    let mut best: Option<(Vec<usize>, T)> = None;
    let mut work = 0u64;
    search_paths(
        graph,
        weights,
        s,
        d,
        &mut visited,
        &mut stack,
        &mut best,
        &mut work,
    );
    match best {
        Some((path, cost)) => Ok(BaselineResult { path, cost, work }),
        None => Err(ClassicalError::NoPathExists),
    }
}

#[allow(clippy::too_many_arguments)]
fn search_paths<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    node: usize,
    d: usize,
    visited: &mut Vec<bool>,
    stack: &mut Vec<usize>,
    best: &mut Option<(Vec<usize>, T)>,
    work: &mut u64,
) {
    for &edge in graph.out_edges(node) {
        let head = graph.edge(edge).expect("live edge").head;
        if visited[head] {
            continue;
        }
        stack.push(edge);
        if head == d {
            *work += 1;
            let cost = graph
                .path_cost(weights, stack)
                .expect("contiguous by construction");
            let improves = match best {
                Some((_, bc)) => cost < *bc,
                None => true,
            };
            if improves {
                *best = Some((stack.clone(), cost));
            }
        } else {
            visited[head] = true;
            search_paths(graph, weights, head, d, visited, stack, best, work);
            visited[head] = false;
        }
        stack.pop();
    }
}

/// Achieved-over-optimal cost ratio, `>= 1` for any feasible candidate.
pub fn approximation_ratio<T: Scalar>(candidate: T, optimal: T) -> Result<T, ClassicalError> {
    if !(optimal.is_finite() && optimal > T::zero()) {
        return Err(ClassicalError::InvalidOptimum);
    }
    if candidate < optimal - T::from_f64_lossy(1e-12) {
        return Err(ClassicalError::InfeasibleCandidate);
    }
    Ok(candidate / optimal)
}
