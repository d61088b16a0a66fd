//! Amplitude amplification over a classically enumerated candidate-path
//! space: threshold search and iterative minimum finding.
//!
//! The search domain is the list of simple source-destination paths found by
//! a bounded depth-first enumeration, padded to a power of two. The oracle
//! is a classical cost-table lookup that flips the phase of marked indices;
//! an explicit oracle-call counter keeps the query complexity observable.
//! Oracle and diffusion are both real operators, so the simulated state is a
//! real amplitude vector.
//!
//! Sampled indices are always verified classically; after three failed
//! retries a search falls back to a classical scan (flagged), so results are
//! exact regardless of amplification luck.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::netgraph::{CompositeWeights, NetGraphError, WirelessGraph};
use crate::scalar::Scalar;
use crate::statevec::sample_distribution;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroverError {
    #[error("no source-destination path exists within the hop bound")]
    NoPathExists,
    #[error("the marked set may not be empty")]
    EmptyMarkedSet,
    #[error("marked count {marked} invalid for space size {size}")]
    InvalidCounts { marked: usize, size: usize },
    #[error("hop bound must be at least one")]
    InvalidHopBound,
    #[error(transparent)]
    Graph(#[from] NetGraphError),
}

/// Classically enumerated simple paths with their costs, padded to a
/// power-of-two search space. Padding indices carry no path and can never be
/// marked or returned.
#[derive(Debug, Clone)]
pub struct CandidateSpace<T> {
    paths: Vec<Vec<usize>>,
    costs: Vec<T>,
    padded_size: usize,
}

impl<T: Scalar> CandidateSpace<T> {
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Power-of-two search-space size (minimum 2).
    pub fn padded_size(&self) -> usize {
        self.padded_size
    }

    pub fn is_padding(&self, index: usize) -> bool {
        index >= self.paths.len()
    }

    pub fn path(&self, index: usize) -> Option<&[usize]> {
        self.paths.get(index).map(Vec::as_slice)
    }

    pub fn cost(&self, index: usize) -> Option<T> {
        self.costs.get(index).copied()
    }

    pub fn costs(&self) -> &[T] {
        &self.costs
    }

    /// Indices of real candidates with cost strictly below the threshold.
    pub fn marked_below(&self, threshold: T) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&i| self.costs[i] < threshold)
            .collect()
    }
}

/// Depth-first enumeration of all simple `s -> d` paths with at most
/// `max_hops` edges, in lexicographic edge-index order.
pub fn enumerate_paths<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
    max_hops: usize,
) -> Result<CandidateSpace<T>, GroverError> {
    if max_hops == 0 {
        return Err(GroverError::InvalidHopBound);
    }
    let mut paths = Vec::new();
    let mut visited = vec![false; graph.node_count()];
    let mut stack = Vec::new();
    visited[s] = true;
    dfs_paths(graph, s, d, max_hops, &mut visited, &mut stack, &mut paths);
    if paths.is_empty() {
        return Err(GroverError::NoPathExists);
    }
    let costs = paths
        .iter()
        .map(|p| {
            graph
                .path_cost(weights, p)
                .expect("enumerated paths are contiguous")
        })
        .collect();
    let padded_size = paths.len().next_power_of_two().max(2);
    Ok(CandidateSpace {
        paths,
        costs,
        padded_size,
    })
}

fn dfs_paths<T: Scalar>(
    graph: &WirelessGraph<T>,
    node: usize,
    d: usize,
    hops_left: usize,
    visited: &mut Vec<bool>,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    // Out-edge lists hold ascending edge indices, so paths emerge in
    // lexicographic order by edge sequence.
    for &edge in graph.out_edges(node) {
        let head = graph.edge(edge).expect("adjacency holds live edges").head;
        if visited[head] {
            continue;
        }
        stack.push(edge);
        if head == d {
            out.push(stack.clone());
        } else if hops_left > 1 {
            visited[head] = true;
            dfs_paths(graph, head, d, hops_left - 1, visited, stack, out);
            visited[head] = false;
        }
        stack.pop();
    }
}

/// Uniform real superposition over `size` indices.
pub fn uniform_state<T: Scalar>(size: usize) -> Vec<T> {
    vec![T::one() / T::from_usize_lossy(size).sqrt(); size]
}

/// One amplification step: flip the sign of marked amplitudes, then reflect
/// about the uniform state (`D = 2|u><u| - I`).
pub fn grover_iterate<T: Scalar>(state: &mut [T], marked: &[usize]) -> Result<(), GroverError> {
    if marked.is_empty() {
        return Err(GroverError::EmptyMarkedSet);
    }
    for &idx in marked {
        if idx >= state.len() {
            return Err(GroverError::InvalidCounts {
                marked: idx,
                size: state.len(),
            });
        }
    }
    for &idx in marked {
        state[idx] = -state[idx];
    }
    let mean = state.iter().copied().sum::<T>() / T::from_usize_lossy(state.len());
    let two = T::one() + T::one();
    for amp in state.iter_mut() {
        *amp = two * mean - *amp;
    }
    Ok(())
}

/// `floor(pi/4 * sqrt(N/M))` iterations, clamped to at least one when some
/// state is unmarked; zero when everything is marked.
pub fn optimal_iterations(size: usize, marked: usize) -> Result<usize, GroverError> {
    if marked == 0 || marked > size || size == 0 {
        return Err(GroverError::InvalidCounts { marked, size });
    }
    if marked == size {
        return Ok(0);
    }
    let ratio = size as f64 / marked as f64;
    let k = (std::f64::consts::FRAC_PI_4 * ratio.sqrt()).floor() as usize;
    Ok(k.max(1))
}

/// Success probability of measuring a marked index after `k` iterations on
/// uniform input: `sin^2((2k+1) * asin(sqrt(M/N)))`.
pub fn predicted_success_probability(size: usize, marked: usize, iterations: usize) -> f64 {
    let theta = (marked as f64 / size as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// Outcome of one threshold search.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSearch {
    /// Index of a verified candidate strictly below the threshold, if any
    /// exists.
    pub found: Option<usize>,
    /// Whether the classical fallback scan produced the result.
    pub fallback_used: bool,
    /// Oracle queries spent: one per amplification step, one per classical
    /// verification of a sampled index, and `N` for a fallback scan.
    pub oracle_calls: u64,
    /// Measurement samples drawn (each one classically verified).
    pub samples_drawn: u64,
}

const SAMPLE_ATTEMPTS: usize = 4; // one sample plus three retries

/// Amplify candidates with cost strictly below `threshold`, sample, verify,
/// and fall back to a classical scan when sampling keeps missing.
pub fn threshold_search<T: Scalar>(
    space: &CandidateSpace<T>,
    threshold: T,
    seed: u64,
) -> ThresholdSearch {
    let marked = space.marked_below(threshold);
    if marked.is_empty() {
        return ThresholdSearch {
            found: None,
            fallback_used: false,
            oracle_calls: 0,
            samples_drawn: 0,
        };
    }
    let size = space.padded_size();
    let iterations =
        optimal_iterations(size, marked.len()).expect("nonempty marked set within bounds");
    let mut state = uniform_state::<T>(size);
    for _ in 0..iterations {
        grover_iterate(&mut state, &marked).expect("marked set stays valid");
    }
    let mut oracle_calls = iterations as u64;
    let mut samples_drawn = 0u64;

    let probs: Vec<T> = state.iter().map(|&a| a * a).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let sample_seed = rng.gen::<u64>();
        let draw = sample_distribution(&probs, 1, sample_seed);
        let index = *draw.keys().next().expect("one shot returns one outcome");
        oracle_calls += 1;
        samples_drawn += 1;
        if !space.is_padding(index) && space.costs[index] < threshold {
            return ThresholdSearch {
                found: Some(index),
                fallback_used: false,
                oracle_calls,
                samples_drawn,
            };
        }
    }
    // Classical fallback: full scan, counted at one oracle call per entry.
    oracle_calls += size as u64;
    let best = marked
        .iter()
        .copied()
        .min_by(|&a, &b| {
            space.costs[a]
                .partial_cmp(&space.costs[b])
                .expect("finite costs")
        })
        .expect("marked set nonempty");
    ThresholdSearch {
        found: Some(best),
        fallback_used: true,
        oracle_calls,
        samples_drawn,
    }
}

/// Result of the iterative minimum search.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimumFound<T> {
    pub index: usize,
    pub cost: T,
    pub oracle_calls: u64,
    /// Searches that had to take the classical fallback path.
    pub fallbacks: u32,
    /// Indices sampled across all rounds (each was classically verified).
    pub samples_drawn: u64,
    /// Samples that verified against their threshold.
    pub samples_verified: u64,
}

/// Iterative threshold descent: start from a random candidate, repeatedly
/// search for anything strictly cheaper, and stop when nothing is left. The
/// exit condition plus classical verification make the result the exact
/// minimum.
pub fn minimum_finding<T: Scalar>(space: &CandidateSpace<T>, seed: u64) -> MinimumFound<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = rng.gen_range(0..space.path_count());
    let mut oracle_calls = 1u64; // initial candidate cost lookup
    let mut fallbacks = 0u32;
    let mut samples_drawn = 0u64;
    let mut samples_verified = 0u64;
    loop {
        let round_seed = rng.gen::<u64>();
        let outcome = threshold_search(space, space.costs[best], round_seed);
        oracle_calls += outcome.oracle_calls;
        samples_drawn += outcome.samples_drawn;
        match outcome.found {
            Some(index) => {
                if outcome.fallback_used {
                    fallbacks += 1;
                } else {
                    samples_verified += 1;
                }
                best = index;
            }
            None => {
                return MinimumFound {
                    index: best,
                    cost: space.costs[best],
                    oracle_calls,
                    fallbacks,
                    samples_drawn,
                    samples_verified,
                };
            }
        }
    }
}
