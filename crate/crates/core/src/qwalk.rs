//! Continuous-time quantum walks on the node space, with a classical
//! diffusion contrast.
//!
//! Directed snapshots are symmetrized for walk purposes (a walk generator
//! must be symmetric): an undirected connection exists wherever at least one
//! directed edge does, and weighted variants average the directional
//! composite costs. Evolution goes through a dense symmetric
//! eigendecomposition computed once per Hamiltonian, so a profile over many
//! times costs one diagonalization plus a matrix-vector product per sample.
//!
//! Walks here are an exploratory instrument: they produce arrival and
//! hitting profiles, not routes.

use num_complex::Complex;
use thiserror::Error;

use crate::netgraph::{CompositeWeights, WirelessGraph};
use crate::scalar::Scalar;

/// Dense-walk size guard; node spaces stay tiny compared to edge-qubit
/// spaces.
pub const MAX_WALK_NODES: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk dimension {state} does not match Hamiltonian dimension {hamiltonian}")]
    DimensionMismatch { state: usize, hamiltonian: usize },
    #[error("node {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("graphs beyond {MAX_WALK_NODES} nodes are not supported for dense walks")]
    TooManyNodes,
    #[error("evolution time must be finite and nonnegative")]
    InvalidTime,
}

/// Which symmetric matrix drives the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    Adjacency,
    Laplacian,
    WeightedAdjacency,
}

/// Symmetric walk generator with its spectral decomposition attached.
#[derive(Debug, Clone)]
pub struct WalkHamiltonian<T> {
    kind: WalkKind,
    n: usize,
    matrix: Vec<T>,
    eigenvalues: Vec<T>,
    /// Orthonormal eigenvectors, column-major: `eigenvectors[k*n + i]` is
    /// component `i` of eigenvector `k`.
    eigenvectors: Vec<T>,
}

impl<T: Scalar> WalkHamiltonian<T> {
    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major dense matrix.
    pub fn matrix(&self) -> &[T] {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Largest absolute entry of `Q L Q^T - H`; diagnostic for the spectral
    /// factorization.
    pub fn reconstruction_error(&self) -> T {
        let n = self.n;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    acc += self.eigenvectors[k * n + i]
                        * self.eigenvalues[k]
                        * self.eigenvectors[k * n + j];
                }
                worst = worst.max((acc - self.matrix[i * n + j]).abs());
            }
        }
        worst
    }
}

/// Build the symmetrized walk generator for a snapshot.
///
/// `Adjacency`: 0/1 connection matrix. `WeightedAdjacency`: composite edge
/// cost, averaged when both directions exist. `Laplacian`: `D - A` over the
/// 0/1 view, so rows sum to zero.
pub fn build_walk_hamiltonian<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    kind: WalkKind,
) -> Result<WalkHamiltonian<T>, WalkError> {
    let n = graph.node_count();
    if n > MAX_WALK_NODES {
        return Err(WalkError::TooManyNodes);
    }
    let mut matrix = vec![T::zero(); n * n];
    let two = T::one() + T::one();
    for u in 0..n {
        for v in u + 1..n {
            let forward = graph
                .out_edges(u)
                .iter()
                .find(|&&e| graph.edge(e).expect("live edge").head == v)
                .copied();
            let backward = graph
                .out_edges(v)
                .iter()
                .find(|&&e| graph.edge(e).expect("live edge").head == u)
                .copied();
            if forward.is_none() && backward.is_none() {
                continue;
            }
            let entry = match kind {
                WalkKind::Adjacency | WalkKind::Laplacian => T::one(),
                WalkKind::WeightedAdjacency => {
                    let costs: Vec<T> = forward
                        .iter()
                        .chain(backward.iter())
                        .map(|&e| graph.edge_cost(e, weights).expect("live edge"))
                        .collect();
                    if costs.len() == 2 {
                        (costs[0] + costs[1]) / two
                    } else {
                        costs[0]
                    }
                }
            };
            matrix[u * n + v] = entry;
            matrix[v * n + u] = entry;
        }
    }
    if kind == WalkKind::Laplacian {
        let adjacency = matrix.clone();
        for u in 0..n {
            let degree: T = (0..n).map(|v| adjacency[u * n + v]).sum();
            for v in 0..n {
                matrix[u * n + v] = if u == v {
                    degree
                } else {
                    -adjacency[u * n + v]
                };
            }
        }
    }
    let (eigenvalues, eigenvectors) = jacobi_eigh(n, &matrix);
    Ok(WalkHamiltonian {
        kind,
        n,
        matrix,
        eigenvalues,
        eigenvectors,
    })
}

/// Amplitude vector over nodes, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> WalkState<T> {
    /// Point mass at one node.
    pub fn at_node(node_count: usize, node: usize) -> Result<Self, WalkError> {
        if node >= node_count {
            return Err(WalkError::NodeOutOfRange { node, node_count });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); node_count];
        amps[node] = Complex::new(T::one(), T::zero());
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Coherent evolution `exp(-i H t)` applied through the cached spectral
/// decomposition.
pub fn evolve<T: Scalar>(
    state: &WalkState<T>,
    hamiltonian: &WalkHamiltonian<T>,
    t: T,
) -> Result<WalkState<T>, WalkError> {
    if state.dim() != hamiltonian.n {
        return Err(WalkError::DimensionMismatch {
            state: state.dim(),
            hamiltonian: hamiltonian.n,
        });
    }
    if !t.is_finite() || t < T::zero() {
        return Err(WalkError::InvalidTime);
    }
    let n = hamiltonian.n;
    // y = Q^T psi, y_k *= exp(-i lambda_k t), psi' = Q y.
    let mut modal = vec![Complex::new(T::zero(), T::zero()); n];
    for (k, slot) in modal.iter_mut().enumerate() {
        for i in 0..n {
            *slot += state.amps[i] * hamiltonian.eigenvectors[k * n + i];
        }
        *slot *= Complex::from_polar(T::one(), -hamiltonian.eigenvalues[k] * t);
    }
    let mut amps = vec![Complex::new(T::zero(), T::zero()); n];
    for (i, amp) in amps.iter_mut().enumerate() {
        for (k, m) in modal.iter().enumerate() {
            *amp += *m * hamiltonian.eigenvectors[k * n + i];
        }
    }
    Ok(WalkState { amps })
}

/// Probability of finding the walker at `node`.
pub fn arrival_probability<T: Scalar>(state: &WalkState<T>, node: usize) -> Result<T, WalkError> {
    state
        .amps
        .get(node)
        .map(|a| a.norm_sqr())
        .ok_or(WalkError::NodeOutOfRange {
            node,
            node_count: state.dim(),
        })
}

/// Continuous-time classical random walk: heat kernel `exp(-L t)` applied to
/// a point mass, over the unweighted symmetrized Laplacian. Tiny negative
/// round-off is clamped to zero.
pub fn classical_diffusion<T: Scalar>(
    graph: &WirelessGraph<T>,
    start: usize,
    t: T,
) -> Result<Vec<T>, WalkError> {
    let uniform_alpha =
        CompositeWeights::new([T::one(), T::zero(), T::zero(), T::zero()]).expect("valid weights");
    let laplacian = build_walk_hamiltonian(graph, &uniform_alpha, WalkKind::Laplacian)?;
    classical_diffusion_with(&laplacian, start, t)
}

/// Same as [`classical_diffusion`] but reusing a prebuilt Laplacian.
pub fn classical_diffusion_with<T: Scalar>(
    laplacian: &WalkHamiltonian<T>,
    start: usize,
    t: T,
) -> Result<Vec<T>, WalkError> {
    let n = laplacian.n;
    if start >= n {
        return Err(WalkError::NodeOutOfRange {
            node: start,
            node_count: n,
        });
    }
    if !t.is_finite() || t < T::zero() {
        return Err(WalkError::InvalidTime);
    }
    let mut dist = vec![T::zero(); n];
    for (i, slot) in dist.iter_mut().enumerate() {
        let mut acc = T::zero();
        for k in 0..n {
            acc += laplacian.eigenvectors[k * n + i]
                * (-laplacian.eigenvalues[k] * t).exp()
                * laplacian.eigenvectors[k * n + start];
        }
        *slot = acc.max(T::zero());
    }
    Ok(dist)
}

/// One sampled point of a hitting profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint<T> {
    pub t: T,
    pub quantum: T,
    pub classical: T,
}

/// Quantum arrival probability at `d` (under the chosen generator) versus
/// classical diffusion mass at `d`, for every requested time.
pub fn hitting_profile<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
    kind: WalkKind,
    times: &[T],
) -> Result<Vec<ProfilePoint<T>>, WalkError> {
    let n = graph.node_count();
    if s >= n {
        return Err(WalkError::NodeOutOfRange {
            node: s,
            node_count: n,
        });
    }
    if d >= n {
        return Err(WalkError::NodeOutOfRange {
            node: d,
            node_count: n,
        });
    }
    let hamiltonian = build_walk_hamiltonian(graph, weights, kind)?;
    let uniform_alpha =
        CompositeWeights::new([T::one(), T::zero(), T::zero(), T::zero()]).expect("valid weights");
    let laplacian = build_walk_hamiltonian(graph, &uniform_alpha, WalkKind::Laplacian)?;
    let start = WalkState::at_node(n, s)?;
    times
        .iter()
        .map(|&t| {
            let quantum = arrival_probability(&evolve(&start, &hamiltonian, t)?, d)?;
            let classical = classical_diffusion_with(&laplacian, s, t)?[d];
            Ok(ProfilePoint {
                t,
                quantum,
                classical,
            })
        })
        .collect()
}

/// Cyclic Jacobi eigendecomposition of a dense symmetric matrix.
///
/// Returns eigenvalues ascending and orthonormal eigenvectors column-major
/// (`vectors[k*n + i]`). Accurate to a small multiple of machine epsilon in
/// the scalar type for the desk-scale dimensions used here.
pub(crate) fn jacobi_eigh<T: Scalar>(n: usize, matrix: &[T]) -> (Vec<T>, Vec<T>) {
    assert_eq!(matrix.len(), n * n, "square matrix required");
    let mut a = matrix.to_vec();
    let mut v = vec![T::zero(); n * n];
    for k in 0..n {
        v[k * n + k] = T::one();
    }
    if n == 1 {
        return (vec![a[0]], v);
    }

    let frobenius = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let tol = T::epsilon() * frobenius.max(T::one());
    let max_sweeps = 64;

    for _ in 0..max_sweeps {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol * T::from_f64_lossy(1e-3) {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / ((T::one() + T::one()) * apq);
                // Stable rotation: t = sgn(theta) / (|theta| + sqrt(theta^2 + 1)).
                let t_rot = {
                    let denom = theta.abs() + (theta * theta + T::one()).sqrt();
                    if theta >= T::zero() {
                        T::one() / denom
                    } else {
                        -T::one() / denom
                    }
                };
                let c = T::one() / (t_rot * t_rot + T::one()).sqrt();
                let s = t_rot * c;

                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[p * n + i];
                    let viq = v[q * n + i];
                    v[p * n + i] = c * vip - s * viq;
                    v[q * n + i] = s * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .partial_cmp(&a[j * n + j])
            .expect("finite eigenvalues")
    });
    let values: Vec<T> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![T::zero(); n * n];
    for (slot, &src) in order.iter().enumerate() {
        vectors[slot * n..(slot + 1) * n].copy_from_slice(&v[src * n..(src + 1) * n]);
    }
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::LinkMetrics;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn metrics(delay: f64) -> LinkMetrics<f64> {
        LinkMetrics::new(delay, 0.0, 0.0, 0.0).unwrap()
    }

    fn delay_only() -> CompositeWeights<f64> {
        CompositeWeights::new([1.0, 0.0, 0.0, 0.0]).unwrap()
    }

    fn two_node() -> WirelessGraph<f64> {
        WirelessGraph::new(2, vec![(0, 1, metrics(1.0))], &[], 0.0).unwrap()
    }

    fn path_three() -> WirelessGraph<f64> {
        WirelessGraph::new(
            3,
            vec![(0, 1, metrics(1.0)), (1, 2, metrics(1.0))],
            &[],
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn two_node_adjacency_matrix() {
        let h = build_walk_hamiltonian(&two_node(), &delay_only(), WalkKind::Adjacency).unwrap();
        assert_eq!(h.matrix(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = WirelessGraph::new(
            3,
            vec![
                (0, 1, metrics(1.0)),
                (1, 2, metrics(1.0)),
                (0, 2, metrics(3.0)),
            ],
            &[],
            0.0,
        )
        .unwrap();
        let h = build_walk_hamiltonian(&g, &delay_only(), WalkKind::Laplacian).unwrap();
        for row in 0..3 {
            let sum: f64 = (0..3).map(|col| h.matrix()[row * 3 + col]).sum();
            assert_relative_eq!(sum, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn weighted_adjacency_averages_directions() {
        let g = WirelessGraph::new(
            2,
            vec![(0, 1, metrics(2.0)), (1, 0, metrics(4.0))],
            &[],
            0.0,
        )
        .unwrap();
        let h = build_walk_hamiltonian(&g, &delay_only(), WalkKind::WeightedAdjacency).unwrap();
        assert_eq!(h.matrix()[1], 3.0);
        assert_eq!(h.matrix()[2], 3.0);

        let single = WirelessGraph::new(2, vec![(0, 1, metrics(2.0))], &[], 0.0).unwrap();
        let h =
            build_walk_hamiltonian(&single, &delay_only(), WalkKind::WeightedAdjacency).unwrap();
        assert_eq!(h.matrix()[1], 2.0);
    }

    #[test]
    fn evolution_at_zero_time_is_identity() {
        let h = build_walk_hamiltonian(&two_node(), &delay_only(), WalkKind::Adjacency).unwrap();
        let s = WalkState::at_node(2, 0).unwrap();
        let out = evolve(&s, &h, 0.0).unwrap();
        assert_relative_eq!(arrival_probability(&out, 0).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn two_node_walk_oscillates_as_sin_squared() {
        let h = build_walk_hamiltonian(&two_node(), &delay_only(), WalkKind::Adjacency).unwrap();
        let s = WalkState::at_node(2, 0).unwrap();
        for i in 0..25 {
            let t = 0.13 * i as f64;
            let out = evolve(&s, &h, t).unwrap();
            assert_relative_eq!(
                arrival_probability(&out, 1).unwrap(),
                t.sin().powi(2),
                epsilon = 1e-9
            );
            assert_relative_eq!(
                arrival_probability(&out, 0).unwrap(),
                t.cos().powi(2),
                epsilon = 1e-9
            );
        }
        let out = evolve(&s, &h, std::f64::consts::FRAC_PI_2).unwrap();
        assert_relative_eq!(arrival_probability(&out, 1).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn evolution_composes_as_a_semigroup() {
        let g = path_three();
        let h = build_walk_hamiltonian(&g, &delay_only(), WalkKind::Adjacency).unwrap();
        let s = WalkState::at_node(3, 0).unwrap();
        let chained = evolve(&evolve(&s, &h, 0.7).unwrap(), &h, 0.9).unwrap();
        let joint = evolve(&s, &h, 1.6).unwrap();
        for (a, b) in chained.amplitudes().iter().zip(joint.amplitudes()) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn arrival_probabilities_sum_to_one() {
        let g = path_three();
        let h = build_walk_hamiltonian(&g, &delay_only(), WalkKind::Adjacency).unwrap();
        let s = WalkState::at_node(3, 1).unwrap();
        let out = evolve(&s, &h, 2.3).unwrap();
        let total: f64 = (0..3).map(|v| arrival_probability(&out, v).unwrap()).sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-9);
        assert!(arrival_probability(&out, 7).is_err());
    }

    #[test]
    fn norm_is_conserved_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.gen_range(2usize..8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.5) {
                        edges.push((u, v, metrics(rng.gen_range(0.2..2.0))));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = WirelessGraph::new(n, edges, &[], 0.0).unwrap();
            for kind in [
                WalkKind::Adjacency,
                WalkKind::Laplacian,
                WalkKind::WeightedAdjacency,
            ] {
                let h = build_walk_hamiltonian(&g, &delay_only(), kind).unwrap();
                let s = WalkState::at_node(n, 0).unwrap();
                let t = rng.gen_range(0.0..10.0);
                let out = evolve(&s, &h, t).unwrap();
                assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
                assert!(h.reconstruction_error() < 1e-9);
            }
        }
    }

    #[test]
    fn classical_diffusion_starts_at_a_point_and_flattens() {
        let g = path_three();
        let at_zero = classical_diffusion(&g, 0, 0.0).unwrap();
        assert_relative_eq!(at_zero[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(at_zero[1] + at_zero[2], 0.0, epsilon = 1e-12);

        let late = classical_diffusion(&g, 0, 100.0).unwrap();
        for p in &late {
            assert_relative_eq!(*p, 1.0 / 3.0, epsilon = 1e-6);
        }
        let sum: f64 = late.iter().sum();
        assert_relative_eq!(sum, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn two_node_heat_kernel_closed_form() {
        let g = two_node();
        for i in 0..10 {
            let t = 0.3 * i as f64;
            let dist = classical_diffusion(&g, 0, t).unwrap();
            assert_relative_eq!(dist[1], (1.0 - (-2.0 * t).exp()) / 2.0, epsilon = 1e-9);
        }
        let t = std::f64::consts::FRAC_PI_2;
        let dist = classical_diffusion(&g, 0, t).unwrap();
        assert_relative_eq!(dist[1], 0.4784, epsilon = 1e-4);
    }

    #[test]
    fn quantum_oscillates_while_classical_is_monotone_on_two_nodes() {
        let g = two_node();
        let h = build_walk_hamiltonian(&g, &delay_only(), WalkKind::Adjacency).unwrap();
        let s = WalkState::at_node(2, 0).unwrap();
        let times: Vec<f64> = (0..40).map(|i| 0.2 * i as f64).collect();
        let quantum: Vec<f64> = times
            .iter()
            .map(|&t| arrival_probability(&evolve(&s, &h, t).unwrap(), 1).unwrap())
            .collect();
        let classical: Vec<f64> = times
            .iter()
            .map(|&t| classical_diffusion(&g, 0, t).unwrap()[1])
            .collect();
        let quantum_monotone = quantum.windows(2).all(|w| w[1] >= w[0] - 1e-12);
        assert!(!quantum_monotone, "quantum arrival should oscillate");
        for w in classical.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "classical arrival should be monotone");
        }
    }

    #[test]
    fn hitting_profile_on_two_nodes() {
        let g = two_node();
        let times = [0.0, std::f64::consts::FRAC_PI_2];
        let profile =
            hitting_profile(&g, &delay_only(), 0, 1, WalkKind::Adjacency, &times).unwrap();
        assert_eq!(profile.len(), 2);
        assert_relative_eq!(profile[0].quantum, 0.0, epsilon = 1e-12);
        assert_relative_eq!(profile[0].classical, 0.0, epsilon = 1e-12);
        assert_relative_eq!(profile[1].quantum, 1.0, epsilon = 1e-9);
        assert_relative_eq!(profile[1].classical, 0.4784, epsilon = 1e-4);
    }

    #[test]
    fn quantum_beats_classical_somewhere_on_the_three_node_path() {
        let g = path_three();
        let times: Vec<f64> = (0..60).map(|i| 0.1 * i as f64).collect();
        let profile =
            hitting_profile(&g, &delay_only(), 0, 2, WalkKind::Adjacency, &times).unwrap();
        assert!(profile.iter().any(|p| p.quantum > p.classical + 0.1));
    }

    #[test]
    fn jacobi_reconstructs_random_symmetric_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let n = rng.gen_range(2usize..12);
            let mut m = vec![0.0f64; n * n];
            for i in 0..n {
                for j in i..n {
                    let x = rng.gen_range(-3.0..3.0);
                    m[i * n + j] = x;
                    m[j * n + i] = x;
                }
            }
            let (values, vectors) = jacobi_eigh(n, &m);
            // Eigenvalues ascending.
            for w in values.windows(2) {
                assert!(w[0] <= w[1] + 1e-12);
            }
            // Orthonormality.
            for a in 0..n {
                for b in 0..n {
                    let dot: f64 = (0..n)
                        .map(|i| vectors[a * n + i] * vectors[b * n + i])
                        .sum();
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((dot - expected).abs() < 1e-9);
                }
            }
            // Reconstruction.
            for i in 0..n {
                for j in 0..n {
                    let acc: f64 = (0..n)
                        .map(|k| vectors[k * n + i] * values[k] * vectors[k * n + j])
                        .sum();
                    assert!((acc - m[i * n + j]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn dimension_and_time_errors() {
        let g = two_node();
        let h = build_walk_hamiltonian(&g, &delay_only(), WalkKind::Adjacency).unwrap();
        let s = WalkState::at_node(3, 0).unwrap();
        assert!(matches!(
            evolve(&s, &h, 1.0),
            Err(WalkError::DimensionMismatch { .. })
        ));
        let s = WalkState::at_node(2, 0).unwrap();
        assert_eq!(evolve(&s, &h, -1.0).unwrap_err(), WalkError::InvalidTime);
    }
}
