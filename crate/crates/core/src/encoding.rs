//! Penalized diagonal routing Hamiltonians over edge-selection variables.
//!
//! One binary variable per directed edge, in canonical edge order. The total
//! operator `H = H_cost + l_flow*H_flow + l_loop*H_loop + l_int*H_int` is
//! diagonal in the computational basis, so it is stored as a quadratic
//! pseudo-boolean form (constant + linear + pairwise terms) and fully
//! specified by its energy on bitstrings; the spin-operator view never needs
//! to be materialized.
//!
//! A connectivity penalty slot exists in [`PenaltyWeights`] but always
//! contributes zero: connectivity violations that slip past the flow and
//! degree penalties (a valid path plus a disjoint cycle) are energetically
//! suppressed by strictly positive edge costs and rejected at decode time.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::netgraph::{
    composite_edge_cost, CompositeWeights, Demand, InvalidPathReason, PathValidation, WirelessGraph,
};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("bitstring does not fit {num_vars} variables")]
    LengthMismatch { num_vars: usize },
    #[error("models disagree on variable count or variable map")]
    VarMapMismatch,
    #[error("variable index {var} out of range for {num_vars} variables")]
    VarOutOfRange { var: usize, num_vars: usize },
}

/// Diagonal Hamiltonian in quadratic pseudo-boolean form.
///
/// `energy(x) = constant + sum_a linear[a]*x_a + sum_{a<b} quadratic[(a,b)]*x_a*x_b`
/// with `x_a` the bit at position `a` of the basis index (bit 0 = least
/// significant = edge 0).
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel<T> {
    num_vars: usize,
    linear: Vec<T>,
    quadratic: BTreeMap<(usize, usize), T>,
    constant: T,
    /// Variable index -> edge index. Identity for every builder in this
    /// module, kept explicit so decoders never assume it.
    var_map: Vec<usize>,
}

impl<T: Scalar> QuboModel<T> {
    /// Empty model over `num_vars` variables with an identity variable map.
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            linear: vec![T::zero(); num_vars],
            quadratic: BTreeMap::new(),
            constant: T::zero(),
            var_map: (0..num_vars).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn linear(&self) -> &[T] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), T> {
        &self.quadratic
    }

    pub fn constant(&self) -> T {
        self.constant
    }

    pub fn var_map(&self) -> &[usize] {
        &self.var_map
    }

    pub fn add_constant(&mut self, value: T) {
        self.constant += value;
    }

    pub fn add_linear(&mut self, var: usize, weight: T) -> Result<(), EncodingError> {
        if var >= self.num_vars {
            return Err(EncodingError::VarOutOfRange {
                var,
                num_vars: self.num_vars,
            });
        }
        self.linear[var] += weight;
        Ok(())
    }

    /// Accumulate a pairwise term; the key is canonicalized to `(min, max)`.
    pub fn add_quadratic(&mut self, a: usize, b: usize, weight: T) -> Result<(), EncodingError> {
        let var = a.max(b);
        if var >= self.num_vars {
            return Err(EncodingError::VarOutOfRange {
                var,
                num_vars: self.num_vars,
            });
        }
        if a == b {
            // x*x = x for binary variables.
            self.linear[a] += weight;
            return Ok(());
        }
        *self
            .quadratic
            .entry((a.min(b), a.max(b)))
            .or_insert_with(T::zero) += weight;
        Ok(())
    }

    /// Termwise `self += factor * other`. Both models must agree on the
    /// variable layout.
    pub fn add_scaled(&mut self, other: &Self, factor: T) -> Result<(), EncodingError> {
        if other.num_vars != self.num_vars || other.var_map != self.var_map {
            return Err(EncodingError::VarMapMismatch);
        }
        self.constant += factor * other.constant;
        for (l, &o) in self.linear.iter_mut().zip(&other.linear) {
            *l += factor * o;
        }
        for (&key, &w) in &other.quadratic {
            *self.quadratic.entry(key).or_insert_with(T::zero) += factor * w;
        }
        Ok(())
    }

    /// Energy of the bitstring encoded as a basis-state index.
    pub fn energy(&self, bits: usize) -> Result<T, EncodingError> {
        if self.num_vars < usize::BITS as usize && bits >> self.num_vars != 0 {
            return Err(EncodingError::LengthMismatch {
                num_vars: self.num_vars,
            });
        }
        let mut e = self.constant;
        for (a, &w) in self.linear.iter().enumerate() {
            if bits >> a & 1 == 1 {
                e += w;
            }
        }
        for (&(a, b), &w) in &self.quadratic {
            if bits >> a & 1 == 1 && bits >> b & 1 == 1 {
                e += w;
            }
        }
        Ok(e)
    }

    /// Count of nonzero linear terms.
    pub fn linear_term_count(&self) -> usize {
        self.linear.iter().filter(|w| **w != T::zero()).count()
    }

    pub fn quadratic_term_count(&self) -> usize {
        self.quadratic.len()
    }

    /// Edge indices selected by a bitstring, through the variable map.
    pub fn selected_edges(&self, bits: usize) -> Result<Vec<usize>, EncodingError> {
        if self.num_vars < usize::BITS as usize && bits >> self.num_vars != 0 {
            return Err(EncodingError::LengthMismatch {
                num_vars: self.num_vars,
            });
        }
        Ok((0..self.num_vars)
            .filter(|&v| bits >> v & 1 == 1)
            .map(|v| self.var_map[v])
            .collect())
    }

    /// Render a bitstring in variable order (variable 0 first).
    pub fn format_bits(&self, bits: usize) -> String {
        (0..self.num_vars)
            .map(|v| if bits >> v & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl<T: Scalar + Serialize> QuboModel<T> {
    /// Deterministic JSON export: linear by index, quadratic by `(a, b)`.
    pub fn export_json(&self) -> String {
        #[derive(Serialize)]
        struct QuadTerm<'a, T> {
            a: usize,
            b: usize,
            w: &'a T,
        }
        #[derive(Serialize)]
        struct Export<'a, T> {
            n: usize,
            constant: &'a T,
            linear: &'a [T],
            quadratic: Vec<QuadTerm<'a, T>>,
            var_map: &'a [usize],
        }
        let export = Export {
            n: self.num_vars,
            constant: &self.constant,
            linear: &self.linear,
            quadratic: self
                .quadratic
                .iter()
                .map(|(&(a, b), w)| QuadTerm { a, b, w })
                .collect(),
            var_map: &self.var_map,
        };
        serde_json::to_string(&export).expect("qubo export serializes")
    }
}

/// Penalty multipliers for the assembled Hamiltonian. `connect` is carried
/// for completeness but multiplies an identically-zero model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenaltyWeights<T> {
    pub flow: T,
    pub connect: T,
    pub degree: T,
    pub interference: T,
}

impl<T: Scalar> PenaltyWeights<T> {
    pub fn new(flow: T, connect: T, degree: T, interference: T) -> Option<Self> {
        let ok = [flow, connect, degree, interference]
            .iter()
            .all(|v| v.is_finite() && *v >= T::zero());
        ok.then_some(Self {
            flow,
            connect,
            degree,
            interference,
        })
    }
}

/// Smallest safe penalty scale: any single constraint violation costs more
/// than the costliest feasible route can save. Flow and degree share
/// `1 + sum(edge costs) + sum(couplings)`; the interference multiplier stays
/// at one so coupled-path costs keep their physical value.
pub fn auto_penalties<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
) -> PenaltyWeights<T> {
    let scale = T::one() + graph.total_edge_cost(weights) + graph.total_coupling();
    PenaltyWeights {
        flow: scale,
        connect: T::zero(),
        degree: scale,
        interference: T::one(),
    }
}

/// Linear cost term: `linear[a] = w_a` for every edge, nothing else.
pub fn build_cost_hamiltonian<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
) -> QuboModel<T> {
    let mut model = QuboModel::zero(graph.edge_count());
    for (var, (_, metrics)) in graph.edges().enumerate() {
        model.linear[var] = composite_edge_cost(metrics, weights);
    }
    model
}

/// Squared per-node flow residual `sum_i (out_i - in_i - b_i)^2` expanded
/// into constant/linear/quadratic terms using `x^2 = x`.
pub fn build_flow_penalty<T: Scalar>(graph: &WirelessGraph<T>, demand: &Demand) -> QuboModel<T> {
    let mut model = QuboModel::zero(graph.edge_count());
    for node in 0..graph.node_count() {
        let b = T::from_f64_lossy(f64::from(demand.b[node]));
        // Signed incidence of each edge at this node: +1 out, -1 in.
        let signed: Vec<(usize, T)> = graph
            .out_edges(node)
            .iter()
            .map(|&e| (e, T::one()))
            .chain(graph.in_edges(node).iter().map(|&e| (e, -T::one())))
            .collect();
        model.add_constant(b * b);
        for &(e, c) in &signed {
            // c^2 = 1 for every incidence.
            model
                .add_linear(e, T::one() - (T::one() + T::one()) * b * c)
                .expect("edge in range");
        }
        for (i, &(ea, ca)) in signed.iter().enumerate() {
            for &(eb, cb) in &signed[i + 1..] {
                model
                    .add_quadratic(ea, eb, (T::one() + T::one()) * ca * cb)
                    .expect("edge in range");
            }
        }
    }
    model
}

/// Degree penalty: one unit for every pair of selected out-edges or selected
/// in-edges sharing a node. Zero on every simple path, positive on any
/// branching configuration. Disjoint cycles slip through (every cycle node
/// has one in and one out) and are handled by positive edge costs plus
/// decode rejection.
pub fn build_loop_penalty<T: Scalar>(graph: &WirelessGraph<T>) -> QuboModel<T> {
    let mut model = QuboModel::zero(graph.edge_count());
    for node in 0..graph.node_count() {
        for group in [graph.out_edges(node), graph.in_edges(node)] {
            for (i, &a) in group.iter().enumerate() {
                for &b in &group[i + 1..] {
                    model.add_quadratic(a, b, T::one()).expect("edge in range");
                }
            }
        }
    }
    model
}

/// Pairwise interference term: `quadratic[(a,b)] = gamma_ab` for every
/// declared coupling.
pub fn build_interference_penalty<T: Scalar>(graph: &WirelessGraph<T>) -> QuboModel<T> {
    let mut model = QuboModel::zero(graph.edge_count());
    for (&(a, b), &gamma) in graph.couplings() {
        model
            .add_quadratic(a, b, gamma)
            .expect("coupling edges in range");
    }
    model
}

/// Termwise weighted sum of the component Hamiltonians.
pub fn assemble_total<T: Scalar>(
    cost: &QuboModel<T>,
    flow: &QuboModel<T>,
    degree: &QuboModel<T>,
    interference: &QuboModel<T>,
    penalties: &PenaltyWeights<T>,
) -> Result<QuboModel<T>, EncodingError> {
    let mut total = cost.clone();
    total.add_scaled(flow, penalties.flow)?;
    total.add_scaled(degree, penalties.degree)?;
    total.add_scaled(interference, penalties.interference)?;
    Ok(total)
}

/// Build the fully assembled routing Hamiltonian for a graph and demand.
pub fn build_total_hamiltonian<T: Scalar>(
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    demand: &Demand,
    penalties: &PenaltyWeights<T>,
) -> QuboModel<T> {
    let cost = build_cost_hamiltonian(graph, weights);
    let flow = build_flow_penalty(graph, demand);
    let degree = build_loop_penalty(graph);
    let interference = build_interference_penalty(graph);
    assemble_total(&cost, &flow, &degree, &interference, penalties)
        .expect("components share one layout")
}

/// Result of mapping a bitstring back onto the graph.
#[derive(Debug, Clone, PartialEq)]
pub enum DecodedRoute<T> {
    Valid { path: Vec<usize>, cost: T },
    Invalid(InvalidPathReason),
}

/// Decode a bitstring to an edge set, validate it as a simple `s -> d` path,
/// and price it (couplings included) when valid.
pub fn decode_bitstring<T: Scalar>(
    model: &QuboModel<T>,
    bits: usize,
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
) -> Result<DecodedRoute<T>, EncodingError> {
    let edges = model.selected_edges(bits)?;
    let validation =
        graph
            .validate_path(&edges, s, d)
            .map_err(|_| EncodingError::LengthMismatch {
                num_vars: model.num_vars(),
            })?;
    Ok(match validation {
        PathValidation::Valid(path) => {
            let cost = graph
                .path_cost(weights, &path)
                .expect("validated path is contiguous");
            DecodedRoute::Valid { path, cost }
        }
        PathValidation::Invalid(reason) => DecodedRoute::Invalid(reason),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::LinkMetrics;

    fn metrics(delay: f64) -> LinkMetrics<f64> {
        LinkMetrics::new(delay, 0.0, 0.0, 0.0).unwrap()
    }

    fn triangle() -> WirelessGraph<f64> {
        WirelessGraph::new(
            3,
            vec![
                (0, 1, metrics(1.0)),
                (1, 2, metrics(1.0)),
                (0, 2, metrics(3.0)),
            ],
            &[],
            0.0,
        )
        .unwrap()
    }

    fn delay_only() -> CompositeWeights<f64> {
        CompositeWeights::new([1.0, 0.0, 0.0, 0.0]).unwrap()
    }

    /// Direct evaluation of the flow residual, independent of the expanded
    /// quadratic form.
    fn flow_residual_oracle(graph: &WirelessGraph<f64>, demand: &Demand, bits: usize) -> f64 {
        (0..graph.node_count())
            .map(|node| {
                let out: f64 = graph
                    .out_edges(node)
                    .iter()
                    .filter(|&&e| bits >> e & 1 == 1)
                    .count() as f64;
                let inn: f64 = graph
                    .in_edges(node)
                    .iter()
                    .filter(|&&e| bits >> e & 1 == 1)
                    .count() as f64;
                let r = out - inn - f64::from(demand.b[node]);
                r * r
            })
            .sum()
    }

    #[test]
    fn cost_hamiltonian_is_the_weight_vector() {
        let h = build_cost_hamiltonian(&triangle(), &delay_only());
        assert_eq!(h.linear(), &[1.0, 1.0, 3.0]);
        assert!(h.quadratic().is_empty());
        assert_eq!(h.constant(), 0.0);
        // Energy of x = (1,1,0) equals the cost of the two-hop path.
        assert_eq!(h.energy(0b011).unwrap(), 2.0);
    }

    #[test]
    fn single_edge_cost_hamiltonian() {
        let g = WirelessGraph::new(2, vec![(0, 1, metrics(2.0))], &[], 0.0).unwrap();
        let h = build_cost_hamiltonian(&g, &delay_only());
        assert_eq!(h.linear(), &[2.0]);
    }

    #[test]
    fn flow_penalty_matches_residual_oracle_on_the_triangle() {
        let g = triangle();
        let demand = crate::netgraph::demand_vector(0, 2, 3).unwrap();
        let h = build_flow_penalty(&g, &demand);
        // Valid paths have zero residual.
        assert_eq!(h.energy(0b011).unwrap(), 0.0);
        assert_eq!(h.energy(0b100).unwrap(), 0.0);
        // Nothing selected: unit residuals at source and destination.
        assert_eq!(h.energy(0b000).unwrap(), 2.0);
        // x = (1,0,1): confirmed against the residual oracle below.
        assert_eq!(h.energy(0b101).unwrap(), 2.0);
        for bits in 0..8 {
            assert_eq!(
                h.energy(bits).unwrap(),
                flow_residual_oracle(&g, &demand, bits)
            );
        }
    }

    #[test]
    fn flow_penalty_matches_residual_oracle_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0usize;
        while checked < 1000 {
            let n = rng.gen_range(2usize..6);
            let mut edges = Vec::new();
            for t in 0..n {
                for h in 0..n {
                    if t != h && rng.gen_bool(0.5) {
                        edges.push((t, h, metrics(rng.gen_range(0.1..2.0))));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = WirelessGraph::new(n, edges, &[], 0.0).unwrap();
            let demand = crate::netgraph::demand_vector(0, n - 1, n).unwrap();
            let h = build_flow_penalty(&g, &demand);
            let bits = rng.gen_range(0..1usize << g.edge_count().min(20));
            let expected = flow_residual_oracle(&g, &demand, bits);
            let got = h.energy(bits).unwrap();
            assert!(
                (got - expected).abs() < 1e-9,
                "bits {bits:b}: {got} vs {expected}"
            );
            checked += 1;
        }
    }

    #[test]
    fn loop_penalty_counts_degree_pairs() {
        let g = triangle();
        let h = build_loop_penalty(&g);
        assert_eq!(h.energy(0b011).unwrap(), 0.0);
        // Both out-edges of node 0 selected.
        assert_eq!(h.energy(0b101).unwrap(), 1.0);
        assert_eq!(h.energy(0b000).unwrap(), 0.0);
    }

    #[test]
    fn interference_penalty_holds_declared_couplings() {
        let g = WirelessGraph::new(
            3,
            vec![
                (0, 1, metrics(1.0)),
                (1, 2, metrics(1.0)),
                (0, 2, metrics(3.0)),
            ],
            &[(0, 2, 2.0)],
            0.0,
        )
        .unwrap();
        let h = build_interference_penalty(&g);
        assert_eq!(h.energy(0b101).unwrap(), 2.0);
        assert_eq!(h.energy(0b011).unwrap(), 0.0);
        let empty = build_interference_penalty(&triangle());
        for bits in 0..8 {
            assert_eq!(empty.energy(bits).unwrap(), 0.0);
        }
    }

    #[test]
    fn assembled_total_combines_components() {
        let g = triangle();
        let demand = crate::netgraph::demand_vector(0, 2, 3).unwrap();
        let penalties = PenaltyWeights::new(10.0, 0.0, 10.0, 1.0).unwrap();
        let total = build_total_hamiltonian(&g, &delay_only(), &demand, &penalties);
        assert_eq!(total.energy(0b000).unwrap(), 20.0);
        assert_eq!(total.energy(0b011).unwrap(), 2.0);
        assert_eq!(total.energy(0b100).unwrap(), 3.0);
    }

    #[test]
    fn zero_penalties_reduce_to_the_cost_term() {
        let g = triangle();
        let demand = crate::netgraph::demand_vector(0, 2, 3).unwrap();
        let penalties = PenaltyWeights::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let total = build_total_hamiltonian(&g, &delay_only(), &demand, &penalties);
        let cost = build_cost_hamiltonian(&g, &delay_only());
        for bits in 0..8 {
            assert_eq!(total.energy(bits).unwrap(), cost.energy(bits).unwrap());
        }
    }

    #[test]
    fn assembly_is_linear_in_the_penalty_weights() {
        let g = triangle();
        let demand = crate::netgraph::demand_vector(0, 2, 3).unwrap();
        let flow = build_flow_penalty(&g, &demand);
        let cost = build_cost_hamiltonian(&g, &delay_only());
        let degree = build_loop_penalty(&g);
        let int = build_interference_penalty(&g);
        let p1 = PenaltyWeights::new(3.0, 0.0, 5.0, 1.0).unwrap();
        let p2 = PenaltyWeights::new(6.0, 0.0, 10.0, 2.0).unwrap();
        let t1 = assemble_total(&cost, &flow, &degree, &int, &p1).unwrap();
        let t2 = assemble_total(&cost, &flow, &degree, &int, &p2).unwrap();
        for bits in 0..8 {
            let base = cost.energy(bits).unwrap();
            let e1 = t1.energy(bits).unwrap() - base;
            let e2 = t2.energy(bits).unwrap() - base;
            assert!((e2 - 2.0 * e1).abs() < 1e-12);
        }
    }

    #[test]
    fn var_map_mismatch_is_rejected() {
        let a = QuboModel::<f64>::zero(3);
        let b = QuboModel::<f64>::zero(4);
        let mut total = a.clone();
        assert_eq!(
            total.add_scaled(&b, 1.0).unwrap_err(),
            EncodingError::VarMapMismatch
        );
    }

    #[test]
    fn energy_checks_bitstring_width() {
        let model = QuboModel::<f64>::zero(3);
        assert!(model.energy(0b111).is_ok());
        assert_eq!(
            model.energy(0b1000).unwrap_err(),
            EncodingError::LengthMismatch { num_vars: 3 }
        );
    }

    #[test]
    fn constant_only_model_energy() {
        let mut model = QuboModel::<f64>::zero(2);
        model.add_constant(4.5);
        for bits in 0..4 {
            assert_eq!(model.energy(bits).unwrap(), 4.5);
        }
    }

    #[test]
    fn penalties_are_nonnegative_and_vanish_on_valid_paths() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.gen_range(2usize..6);
            let mut edges = Vec::new();
            for t in 0..n {
                for h in 0..n {
                    if t != h && rng.gen_bool(0.5) {
                        edges.push((t, h, metrics(rng.gen_range(0.1..2.0))));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = WirelessGraph::new(n, edges, &[], 0.0).unwrap();
            let demand = crate::netgraph::demand_vector(0, n - 1, n).unwrap();
            let flow = build_flow_penalty(&g, &demand);
            let degree = build_loop_penalty(&g);
            let bits = rng.gen_range(0..1usize << g.edge_count().min(20));
            let flow_e = flow.energy(bits).unwrap();
            let deg_e = degree.energy(bits).unwrap();
            assert!(flow_e >= 0.0 && deg_e >= 0.0);
            let edges_sel = flow.selected_edges(bits).unwrap();
            if let PathValidation::Valid(_) = g.validate_path(&edges_sel, 0, n - 1).unwrap() {
                assert_eq!(flow_e, 0.0);
                assert_eq!(deg_e, 0.0);
            }
        }
    }

    #[test]
    fn decode_examples_on_the_triangle() {
        let g = triangle();
        let demand = crate::netgraph::demand_vector(0, 2, 3).unwrap();
        let penalties = PenaltyWeights::new(10.0, 0.0, 10.0, 1.0).unwrap();
        let total = build_total_hamiltonian(&g, &delay_only(), &demand, &penalties);
        assert_eq!(
            decode_bitstring(&total, 0b011, &g, &delay_only(), 0, 2).unwrap(),
            DecodedRoute::Valid {
                path: vec![0, 1],
                cost: 2.0
            }
        );
        assert_eq!(
            decode_bitstring(&total, 0b101, &g, &delay_only(), 0, 2).unwrap(),
            DecodedRoute::Invalid(InvalidPathReason::Branching)
        );
        assert_eq!(
            decode_bitstring(&total, 0b000, &g, &delay_only(), 0, 2).unwrap(),
            DecodedRoute::Invalid(InvalidPathReason::Empty)
        );
    }

    #[test]
    fn export_is_deterministic_and_ordered() {
        let g = WirelessGraph::new(
            3,
            vec![
                (0, 1, metrics(1.0)),
                (1, 2, metrics(1.0)),
                (0, 2, metrics(3.0)),
            ],
            &[(1, 2, 0.5), (0, 1, 0.25)],
            0.0,
        )
        .unwrap();
        let demand = crate::netgraph::demand_vector(0, 2, 3).unwrap();
        let total = build_total_hamiltonian(
            &g,
            &delay_only(),
            &demand,
            &auto_penalties(&g, &delay_only()),
        );
        let a = total.export_json();
        let b = total.export_json();
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["n"], 3);
        let quads = parsed["quadratic"].as_array().unwrap();
        let keys: Vec<(u64, u64)> = quads
            .iter()
            .map(|q| (q["a"].as_u64().unwrap(), q["b"].as_u64().unwrap()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn format_bits_renders_variable_order() {
        let model = QuboModel::<f64>::zero(3);
        assert_eq!(model.format_bits(0b011), "110");
        assert_eq!(model.format_bits(0b100), "001");
    }
}
