//! End-to-end routing pipeline: snapshot in, validated decision out, with a
//! stage-by-stage runtime ledger and a classical fallback.
//!
//! Stages: prepare (parse and validate the scenario), map (Hamiltonian
//! assembly or candidate enumeration), the kernel itself, and post
//! (decode, validate, rank, score). The classical stages are measured on a
//! monotonic clock; the kernel additionally carries a *modeled* cost
//! `n_s * d_U * tau_gate` expressed in abstract gate-time units, and it is
//! the modeled figure that enters the ledger total, since a simulator's wall
//! clock says nothing about the hardware the model describes. Measured wall
//! times are reported in fields suffixed `_wall` and are excluded from the
//! canonical serialization, which is reproducible byte-for-byte per seed.
//!
//! Whenever a classical route exists the decision is feasible: zero feasible
//! samples, a kernel error, or a blown latency budget all divert to the
//! shortest-path fallback rather than failing the run.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::classical::{approximation_ratio, brute_force_best_path, dijkstra};
use crate::encoding::{
    auto_penalties, build_total_hamiltonian, decode_bitstring, DecodedRoute, PenaltyWeights,
    QuboModel,
};
use crate::grover::{enumerate_paths, minimum_finding};
use crate::netgraph::{CompositeWeights, Demand, WirelessGraph};
use crate::qaoa::{extract_candidates, optimize, OptimizerKind, QaoaConfig, QaoaParams};
use crate::scenario::{Scenario, ScenarioError};
use crate::statevec::EnergyTable;

/// Largest instance priced against the exhaustive path oracle when
/// computing approximation ratios.
pub const ORACLE_EDGE_LIMIT: usize = 12;

#[derive(Debug, Error)]
pub enum HybridError {
    #[error("scenario invalid: {0}")]
    ScenarioInvalid(#[from] ScenarioError),
    #[error("config invalid: {0}")]
    ConfigInvalid(&'static str),
    #[error("cannot compute a feasibility rate from zero samples")]
    EmptySamples,
    #[error("speedup inputs invalid: {0}")]
    InvalidInputs(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    Qaoa,
    Grover,
    ClassicalOnly,
}

impl Kernel {
    pub fn name(self) -> &'static str {
        match self {
            Kernel::Qaoa => "qaoa",
            Kernel::Grover => "grover",
            Kernel::ClassicalOnly => "classical_only",
        }
    }
}

/// Per-component penalty overrides; `None` resolves to the automatic safe
/// scale for that component.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PenaltySpec {
    pub flow: Option<f64>,
    pub connect: Option<f64>,
    pub degree: Option<f64>,
    pub interference: Option<f64>,
}

impl PenaltySpec {
    pub fn resolve(
        &self,
        graph: &WirelessGraph<f64>,
        weights: &CompositeWeights<f64>,
    ) -> PenaltyWeights<f64> {
        let auto = auto_penalties(graph, weights);
        PenaltyWeights {
            flow: self.flow.unwrap_or(auto.flow),
            connect: self.connect.unwrap_or(auto.connect),
            degree: self.degree.unwrap_or(auto.degree),
            interference: self.interference.unwrap_or(auto.interference),
        }
    }
}

/// Variational-kernel settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QaoaSettings {
    pub depth: usize,
    pub optimizer: OptimizerKind,
    pub max_evals: usize,
    pub restarts: usize,
}

impl Default for QaoaSettings {
    fn default() -> Self {
        Self {
            depth: 2,
            optimizer: OptimizerKind::NelderMead,
            max_evals: 500,
            restarts: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub kernel: Kernel,
    pub penalties: PenaltySpec,
    pub qaoa: QaoaSettings,
    /// Warm start for the variational kernel (used by depth sweeps).
    pub qaoa_init: Option<QaoaParams<f64>>,
    /// Hop bound for candidate enumeration; defaults to `node_count - 1`.
    pub max_hops: Option<usize>,
    pub shots: u64,
    pub noise_p: f64,
    pub seed: u64,
    /// Wall-clock budget in seconds; exceeding it forces the fallback.
    pub latency_budget: Option<f64>,
    /// Modeled per-gate time constant, abstract units.
    pub tau_gate: f64,
    /// Candidates kept after ranking.
    pub top_k: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            kernel: Kernel::Qaoa,
            penalties: PenaltySpec::default(),
            qaoa: QaoaSettings::default(),
            qaoa_init: None,
            max_hops: None,
            shots: 2048,
            noise_p: 0.0,
            seed: 7,
            latency_budget: None,
            tau_gate: 1.0,
            top_k: 16,
        }
    }
}

/// Stage cost breakdown. `total` mixes measured classical stages with the
/// modeled kernel term by construction; the kernel's own wall clock sits
/// next to it for comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuntimeLedger {
    /// Samples (shots) or oracle calls spent by the kernel.
    pub n_s: u64,
    /// Modeled circuit depth per execution.
    pub d_u: u64,
    pub tau_gate: f64,
    /// `n_s * d_u * tau_gate`.
    pub t_quantum_model: f64,
    pub t_prep_wall: f64,
    pub t_map_wall: f64,
    pub t_quantum_wall: f64,
    pub t_class_opt_wall: f64,
    pub t_post_wall: f64,
    /// `t_prep_wall + t_map_wall + t_quantum_model + t_class_opt_wall +
    /// t_post_wall`.
    pub total: f64,
}

impl RuntimeLedger {
    fn finish(mut self) -> Self {
        self.t_quantum_model = self.n_s as f64 * self.d_u as f64 * self.tau_gate;
        self.total = self.t_prep_wall
            + self.t_map_wall
            + self.t_quantum_model
            + self.t_class_opt_wall
            + self.t_post_wall;
        self
    }

    fn empty(tau_gate: f64) -> Self {
        Self {
            n_s: 0,
            d_u: 0,
            tau_gate,
            t_quantum_model: 0.0,
            t_prep_wall: 0.0,
            t_map_wall: 0.0,
            t_quantum_wall: 0.0,
            t_class_opt_wall: 0.0,
            t_post_wall: 0.0,
            total: 0.0,
        }
    }
}

/// Final routing decision plus its ledger.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoutingDecision {
    pub kernel_requested: String,
    pub kernel_used: String,
    pub seed: u64,
    pub feasible: bool,
    /// Ordered edge indices of the selected route.
    pub path: Option<Vec<usize>>,
    /// True route cost, couplings included.
    pub cost: Option<f64>,
    /// Achieved-over-optimal ratio; present only when the instance is small
    /// enough for the exhaustive oracle.
    pub ratio: Option<f64>,
    /// Above the oracle limit: achieved cost over the truthfully-priced
    /// shortest-path route. A proxy, not an optimality ratio, and it can
    /// drop below one when couplings mislead the additive baseline.
    pub cost_vs_shortest_path: Option<f64>,
    /// Best variational objective reached (variational kernel only).
    pub objective: Option<f64>,
    /// Fraction of kernel samples that decoded to valid routes.
    pub feasibility_rate: f64,
    pub fallback_used: bool,
    pub qaoa_gammas: Option<Vec<f64>>,
    pub qaoa_betas: Option<Vec<f64>>,
    pub ledger: RuntimeLedger,
}

impl RoutingDecision {
    /// Full JSON, including measured wall-clock fields.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decision serializes")
    }

    /// Deterministic JSON: everything except measured wall clocks. Two runs
    /// with the same scenario and config produce identical bytes.
    pub fn to_canonical_json(&self) -> String {
        #[derive(Serialize)]
        struct CanonicalLedger {
            n_s: u64,
            d_u: u64,
            tau_gate: f64,
            t_quantum_model: f64,
        }
        #[derive(Serialize)]
        struct Canonical<'a> {
            kernel_requested: &'a str,
            kernel_used: &'a str,
            seed: u64,
            feasible: bool,
            path: &'a Option<Vec<usize>>,
            cost: &'a Option<f64>,
            ratio: &'a Option<f64>,
            cost_vs_shortest_path: &'a Option<f64>,
            objective: &'a Option<f64>,
            feasibility_rate: f64,
            fallback_used: bool,
            qaoa_gammas: &'a Option<Vec<f64>>,
            qaoa_betas: &'a Option<Vec<f64>>,
            ledger: CanonicalLedger,
        }
        let canonical = Canonical {
            kernel_requested: &self.kernel_requested,
            kernel_used: &self.kernel_used,
            seed: self.seed,
            feasible: self.feasible,
            path: &self.path,
            cost: &self.cost,
            ratio: &self.ratio,
            cost_vs_shortest_path: &self.cost_vs_shortest_path,
            objective: &self.objective,
            feasibility_rate: self.feasibility_rate,
            fallback_used: self.fallback_used,
            qaoa_gammas: &self.qaoa_gammas,
            qaoa_betas: &self.qaoa_betas,
            ledger: CanonicalLedger {
                n_s: self.ledger.n_s,
                d_u: self.ledger.d_u,
                tau_gate: self.ledger.tau_gate,
                t_quantum_model: self.ledger.t_quantum_model,
            },
        };
        serde_json::to_string_pretty(&canonical).expect("decision serializes")
    }
}

/// Modeled depth of one ansatz execution: per layer, one time slot per
/// nonzero linear phase term, one per pairwise phase term, and one mixer
/// rotation per qubit.
pub fn model_circuit_depth(model: &QuboModel<f64>, depth: usize) -> u64 {
    let per_layer = model.linear_term_count() + model.quadratic_term_count() + model.num_vars();
    (depth as u64) * (per_layer as u64)
}

/// Shot-weighted fraction of sampled bitstrings decoding to valid routes.
pub fn feasibility_rate(
    samples: &BTreeMap<usize, u64>,
    model: &QuboModel<f64>,
    graph: &WirelessGraph<f64>,
    weights: &CompositeWeights<f64>,
    s: usize,
    d: usize,
) -> Result<f64, HybridError> {
    let total: u64 = samples.values().sum();
    if total == 0 {
        return Err(HybridError::EmptySamples);
    }
    let mut valid = 0u64;
    for (&bits, &count) in samples {
        let decoded = decode_bitstring(model, bits, graph, weights, s, d)
            .map_err(|_| HybridError::EmptySamples)?;
        if matches!(decoded, DecodedRoute::Valid { .. }) {
            valid += count;
        }
    }
    Ok(valid as f64 / total as f64)
}

/// Does offloading pay? `t_encode + t_classical / s_factor < t_classical`.
pub fn speedup_condition(
    t_encode: f64,
    t_classical: f64,
    s_factor: f64,
) -> Result<bool, HybridError> {
    if !t_encode.is_finite() || t_encode < 0.0 {
        return Err(HybridError::InvalidInputs(
            "encoding overhead must be finite and >= 0",
        ));
    }
    if !t_classical.is_finite() || t_classical <= 0.0 {
        return Err(HybridError::InvalidInputs(
            "classical time must be finite and > 0",
        ));
    }
    if !s_factor.is_finite() || s_factor <= 0.0 {
        return Err(HybridError::InvalidInputs(
            "speedup factor must be finite and > 0",
        ));
    }
    Ok(t_encode + t_classical / s_factor < t_classical)
}

/// Stage shares of the ledger total, mapped onto the monitoring / reduction
/// / optimization / validation / deployment split. Deployment is not
/// simulated and reports zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorkloadReport {
    pub monitor: f64,
    pub reduce: f64,
    pub opt: f64,
    pub validate: f64,
    pub deploy: f64,
}

pub fn workload_report(decision: &RoutingDecision) -> WorkloadReport {
    let ledger = &decision.ledger;
    let total = ledger.total;
    if total <= 0.0 {
        return WorkloadReport {
            monitor: 0.0,
            reduce: 0.0,
            opt: 0.0,
            validate: 0.0,
            deploy: 0.0,
        };
    }
    WorkloadReport {
        monitor: ledger.t_prep_wall / total,
        reduce: ledger.t_map_wall / total,
        opt: (ledger.t_quantum_model + ledger.t_class_opt_wall) / total,
        validate: ledger.t_post_wall / total,
        deploy: 0.0,
    }
}

struct KernelOutcome {
    path: Option<Vec<usize>>,
    objective: Option<f64>,
    feasibility: f64,
    qaoa_params: Option<QaoaParams<f64>>,
    n_s: u64,
    d_u: u64,
}

/// Run the full pipeline on a scenario. Infeasibility (even classical) comes
/// back as a decision, not an error; errors are reserved for inputs that do
/// not validate.
pub fn run_pipeline(
    scenario: &Scenario,
    config: &PipelineConfig,
) -> Result<RoutingDecision, HybridError> {
    if config.shots == 0 {
        return Err(HybridError::ConfigInvalid("shots must be at least one"));
    }
    if !(0.0..=1.0).contains(&config.noise_p) {
        return Err(HybridError::ConfigInvalid(
            "noise probability must lie in [0,1]",
        ));
    }
    if config.qaoa.depth == 0 {
        return Err(HybridError::ConfigInvalid(
            "ansatz depth must be at least one",
        ));
    }
    if !config.tau_gate.is_finite() || config.tau_gate < 0.0 {
        return Err(HybridError::ConfigInvalid(
            "tau_gate must be finite and >= 0",
        ));
    }

    let started = Instant::now();
    let mut ledger = RuntimeLedger::empty(config.tau_gate);

    // Prepare: scenario -> typed problem.
    let clock = Instant::now();
    let (graph, weights, demand) = scenario.build()?;
    ledger.t_prep_wall = clock.elapsed().as_secs_f64();

    let kernel = run_kernel(&graph, &weights, &demand, config, &mut ledger);

    // Post: validate, rank, score, and fall back when needed.
    let clock = Instant::now();
    let mut fallback_used = false;
    let mut kernel_used = config.kernel.name().to_string();
    let mut outcome = match kernel {
        Some(outcome) if outcome.path.is_some() => outcome,
        _ => {
            fallback_used = true;
            fallback_outcome(&graph, &weights, &demand, kernel)
        }
    };
    if let Some(budget) = config.latency_budget {
        if started.elapsed().as_secs_f64() > budget && !fallback_used {
            fallback_used = true;
            outcome = fallback_outcome(&graph, &weights, &demand, Some(outcome));
        }
    }
    if fallback_used {
        kernel_used = format!("{}->dijkstra", config.kernel.name());
    }

    let (feasible, cost) = match &outcome.path {
        Some(path) => (
            true,
            Some(graph.path_cost(&weights, path).expect("validated route")),
        ),
        None => (false, None),
    };
    let (ratio, cost_vs_shortest_path) = match (feasible, cost) {
        (true, Some(cost)) if graph.edge_count() <= ORACLE_EDGE_LIMIT => {
            let ratio = brute_force_best_path(&graph, &weights, demand.source, demand.dest)
                .ok()
                .and_then(|best| approximation_ratio(cost, best.cost).ok());
            (ratio, None)
        }
        (true, Some(cost)) => {
            // Oracle out of reach: score against the truthfully-priced
            // shortest-path route instead.
            let proxy = dijkstra(&graph, &weights, demand.source, demand.dest)
                .ok()
                .and_then(|baseline| {
                    let priced = graph.path_cost(&weights, &baseline.path).ok()?;
                    (priced > 0.0).then(|| cost / priced)
                });
            (None, proxy)
        }
        _ => (None, None),
    };
    ledger.t_post_wall = clock.elapsed().as_secs_f64();

    let ledger = RuntimeLedger {
        n_s: outcome.n_s,
        d_u: outcome.d_u,
        ..ledger
    }
    .finish();
    let (qaoa_gammas, qaoa_betas) = match &outcome.qaoa_params {
        Some(params) => (
            Some(params.gammas().to_vec()),
            Some(params.betas().to_vec()),
        ),
        None => (None, None),
    };
    Ok(RoutingDecision {
        kernel_requested: config.kernel.name().to_string(),
        kernel_used,
        seed: config.seed,
        feasible,
        path: outcome.path,
        cost,
        ratio,
        cost_vs_shortest_path,
        objective: outcome.objective,
        feasibility_rate: outcome.feasibility,
        fallback_used,
        qaoa_gammas,
        qaoa_betas,
        ledger,
    })
}

/// Execute the configured kernel; `None` means it failed and the fallback
/// should take over.
fn run_kernel(
    graph: &WirelessGraph<f64>,
    weights: &CompositeWeights<f64>,
    demand: &Demand,
    config: &PipelineConfig,
    ledger: &mut RuntimeLedger,
) -> Option<KernelOutcome> {
    let (s, d) = (demand.source, demand.dest);
    match config.kernel {
        Kernel::Qaoa => {
            let clock = Instant::now();
            let penalties = config.penalties.resolve(graph, weights);
            let model = build_total_hamiltonian(graph, weights, demand, &penalties);
            let table = EnergyTable::from_model(&model).ok();
            ledger.t_map_wall = clock.elapsed().as_secs_f64();
            let table = table?;

            let clock = Instant::now();
            let qaoa_config = QaoaConfig {
                depth: config.qaoa.depth,
                optimizer: config.qaoa.optimizer,
                max_evals: config.qaoa.max_evals,
                restarts: config.qaoa.restarts,
                seed: config.seed,
                init: config.qaoa_init.clone(),
            };
            let result = optimize(&table, &qaoa_config).ok();
            ledger.t_class_opt_wall = clock.elapsed().as_secs_f64();
            let result = result?;

            let clock = Instant::now();
            let extraction = extract_candidates(
                &result.final_distribution,
                &model,
                graph,
                weights,
                s,
                d,
                config.top_k,
                config.shots,
                config.seed,
                config.noise_p,
            )
            .ok();
            ledger.t_quantum_wall = clock.elapsed().as_secs_f64();
            let extraction = extraction?;

            let feasibility =
                feasibility_rate(&extraction.samples, &model, graph, weights, s, d).unwrap_or(0.0);
            let best = extraction.candidates.iter().find(|c| c.feasible);
            Some(KernelOutcome {
                path: best.and_then(|c| c.path.clone()),
                objective: Some(result.best_objective),
                feasibility,
                qaoa_params: Some(result.best_params),
                n_s: config.shots,
                d_u: model_circuit_depth(&model, config.qaoa.depth),
            })
        }
        Kernel::Grover => {
            let clock = Instant::now();
            let max_hops = config
                .max_hops
                .unwrap_or(graph.node_count().saturating_sub(1))
                .max(1);
            let space = enumerate_paths(graph, weights, s, d, max_hops).ok();
            ledger.t_map_wall = clock.elapsed().as_secs_f64();
            let space = space?;

            let clock = Instant::now();
            let found = minimum_finding(&space, config.seed);
            ledger.t_quantum_wall = clock.elapsed().as_secs_f64();

            let feasibility = if found.samples_drawn == 0 {
                1.0
            } else {
                found.samples_verified as f64 / found.samples_drawn as f64
            };
            Some(KernelOutcome {
                path: space.path(found.index).map(<[usize]>::to_vec),
                objective: None,
                feasibility,
                qaoa_params: None,
                n_s: found.oracle_calls,
                d_u: 1,
            })
        }
        Kernel::ClassicalOnly => {
            let clock = Instant::now();
            let baseline = dijkstra(graph, weights, s, d).ok();
            ledger.t_class_opt_wall = clock.elapsed().as_secs_f64();
            let baseline = baseline?;
            Some(KernelOutcome {
                path: Some(baseline.path),
                objective: None,
                feasibility: 1.0,
                qaoa_params: None,
                n_s: 0,
                d_u: 0,
            })
        }
    }
}

/// Shortest-path fallback, preserving whatever the kernel managed to report.
fn fallback_outcome(
    graph: &WirelessGraph<f64>,
    weights: &CompositeWeights<f64>,
    demand: &Demand,
    kernel: Option<KernelOutcome>,
) -> KernelOutcome {
    let base = kernel.unwrap_or(KernelOutcome {
        path: None,
        objective: None,
        feasibility: 0.0,
        qaoa_params: None,
        n_s: 0,
        d_u: 0,
    });
    match dijkstra(graph, weights, demand.source, demand.dest) {
        Ok(result) => KernelOutcome {
            path: Some(result.path),
            ..base
        },
        Err(_) => KernelOutcome { path: None, ..base },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{triangle_scenario, Scenario, ScenarioCoupling};
    use approx::assert_relative_eq;

    fn quick_config(kernel: Kernel) -> PipelineConfig {
        PipelineConfig {
            kernel,
            qaoa: QaoaSettings {
                max_evals: 200,
                restarts: 2,
                ..Default::default()
            },
            shots: 512,
            ..Default::default()
        }
    }

    #[test]
    fn qaoa_pipeline_solves_the_triangle_optimally() {
        let decision = run_pipeline(&triangle_scenario(), &PipelineConfig::default()).unwrap();
        assert!(decision.feasible);
        assert_eq!(decision.path.as_deref(), Some(&[0, 1][..]));
        assert_eq!(decision.cost, Some(2.0));
        assert_eq!(decision.ratio, Some(1.0));
        assert!(!decision.fallback_used);
        assert_eq!(decision.kernel_used, "qaoa");
        assert!(decision.ledger.n_s == 2048);
        assert!(decision.ledger.t_quantum_model > 0.0);
    }

    #[test]
    fn classical_pipeline_matches_on_the_uncoupled_triangle() {
        let decision =
            run_pipeline(&triangle_scenario(), &quick_config(Kernel::ClassicalOnly)).unwrap();
        assert!(decision.feasible);
        assert_eq!(decision.path.as_deref(), Some(&[0, 1][..]));
        assert_eq!(decision.ledger.t_quantum_model, 0.0);
        assert_eq!(decision.ledger.n_s, 0);
        assert_eq!(decision.feasibility_rate, 1.0);
    }

    #[test]
    fn grover_pipeline_finds_the_optimum() {
        let decision = run_pipeline(&triangle_scenario(), &quick_config(Kernel::Grover)).unwrap();
        assert!(decision.feasible);
        assert_eq!(decision.path.as_deref(), Some(&[0, 1][..]));
        assert_eq!(decision.ratio, Some(1.0));
        assert_eq!(decision.ledger.d_u, 1);
        assert!(decision.ledger.n_s > 0);
    }

    #[test]
    fn full_noise_still_yields_a_feasible_decision() {
        let mut config = quick_config(Kernel::Qaoa);
        config.noise_p = 1.0;
        config.shots = 4;
        for seed in 0..10 {
            config.seed = seed;
            let decision = run_pipeline(&triangle_scenario(), &config).unwrap();
            assert!(decision.feasible, "seed {seed}: a classical path exists");
            if decision.fallback_used {
                assert_eq!(decision.kernel_used, "qaoa->dijkstra");
            }
        }
    }

    #[test]
    fn unreachable_destination_surfaces_as_infeasible_fallback() {
        let scenario = Scenario {
            nodes: 3,
            edges: vec![crate::scenario::ScenarioEdge {
                tail: 1,
                head: 0,
                delay: 1.0,
                energy: 0.0,
                loss: 0.0,
                interference: 0.0,
            }],
            couplings: vec![],
            source: 0,
            dest: 2,
            alpha: [1.0, 0.0, 0.0, 0.0],
            time: 0.0,
        };
        let decision = run_pipeline(&scenario, &quick_config(Kernel::Grover)).unwrap();
        assert!(!decision.feasible);
        assert!(decision.fallback_used);
        assert!(decision.path.is_none());
        assert!(decision.cost.is_none());
    }

    #[test]
    fn zero_latency_budget_forces_the_fallback() {
        let mut config = quick_config(Kernel::Qaoa);
        config.latency_budget = Some(0.0);
        let decision = run_pipeline(&triangle_scenario(), &config).unwrap();
        assert!(decision.fallback_used);
        assert!(decision.feasible);
        assert_eq!(decision.kernel_used, "qaoa->dijkstra");
    }

    #[test]
    fn canonical_serialization_is_byte_deterministic() {
        let config = quick_config(Kernel::Qaoa);
        let a = run_pipeline(&triangle_scenario(), &config).unwrap();
        let b = run_pipeline(&triangle_scenario(), &config).unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        // Full JSON includes wall clocks and is not expected to be stable.
        assert!(a.to_json().contains("t_prep_wall"));
        assert!(!a.to_canonical_json().contains("t_prep_wall"));
    }

    #[test]
    fn ledger_total_identity() {
        let decision = run_pipeline(&triangle_scenario(), &quick_config(Kernel::Qaoa)).unwrap();
        let l = &decision.ledger;
        assert_eq!(
            l.total,
            l.t_prep_wall + l.t_map_wall + l.t_quantum_model + l.t_class_opt_wall + l.t_post_wall
        );
        assert_eq!(l.t_quantum_model, l.n_s as f64 * l.d_u as f64 * l.tau_gate);
    }

    #[test]
    fn ratio_is_coupling_aware_for_the_classical_kernel() {
        let mut scenario = triangle_scenario();
        scenario.couplings.push(ScenarioCoupling {
            a: 0,
            b: 1,
            gamma: 5.0,
        });
        let decision = run_pipeline(&scenario, &quick_config(Kernel::ClassicalOnly)).unwrap();
        // The additive baseline picks the coupled two-hop route, whose true
        // cost is 7 against the exhaustive optimum of 3.
        assert_eq!(decision.cost, Some(7.0));
        assert_relative_eq!(decision.ratio.unwrap(), 7.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn feasibility_rate_counts_shot_weighted_valid_decodes() {
        let (graph, weights, demand) = triangle_scenario().build().unwrap();
        let penalties = PenaltySpec::default().resolve(&graph, &weights);
        let model = build_total_hamiltonian(&graph, &weights, &demand, &penalties);
        let mut samples = BTreeMap::new();
        samples.insert(0b011usize, 10u64);
        assert_eq!(
            feasibility_rate(&samples, &model, &graph, &weights, 0, 2).unwrap(),
            1.0
        );
        samples.insert(0b000, 10);
        samples.insert(0b101, 20);
        assert_relative_eq!(
            feasibility_rate(&samples, &model, &graph, &weights, 0, 2).unwrap(),
            0.25,
            epsilon = 1e-12
        );
        let empty = BTreeMap::new();
        assert!(matches!(
            feasibility_rate(&empty, &model, &graph, &weights, 0, 2),
            Err(HybridError::EmptySamples)
        ));
    }

    #[test]
    fn uniform_samples_on_the_triangle_hit_one_quarter() {
        let (graph, weights, demand) = triangle_scenario().build().unwrap();
        let penalties = PenaltySpec::default().resolve(&graph, &weights);
        let model = build_total_hamiltonian(&graph, &weights, &demand, &penalties);
        let samples: BTreeMap<usize, u64> = (0..8).map(|b| (b, 5)).collect();
        assert_eq!(
            feasibility_rate(&samples, &model, &graph, &weights, 0, 2).unwrap(),
            0.25
        );
    }

    #[test]
    fn speedup_condition_boundary_cases() {
        assert!(speedup_condition(5.0, 100.0, 4.0).unwrap());
        assert!(!speedup_condition(80.0, 100.0, 4.0).unwrap());
        assert!(!speedup_condition(0.0, 100.0, 1.0).unwrap());
        assert!(!speedup_condition(10.0, 100.0, 1.0).unwrap());
        assert!(speedup_condition(0.0, 100.0, -1.0).is_err());
        assert!(speedup_condition(0.0, 0.0, 2.0).is_err());
        assert!(speedup_condition(-1.0, 10.0, 2.0).is_err());
    }

    #[test]
    fn circuit_depth_model() {
        let (graph, weights, demand) = triangle_scenario().build().unwrap();
        let penalties = PenaltySpec::default().resolve(&graph, &weights);
        let model = build_total_hamiltonian(&graph, &weights, &demand, &penalties);
        let d1 = model_circuit_depth(&model, 1);
        assert_eq!(
            d1,
            (model.linear_term_count() + model.quadratic_term_count() + model.num_vars()) as u64
        );
        assert_eq!(model_circuit_depth(&model, 2), 2 * d1);

        let mut tiny = QuboModel::<f64>::zero(1);
        tiny.add_linear(0, 1.0).unwrap();
        assert_eq!(model_circuit_depth(&tiny, 1), 2);
    }

    #[test]
    fn workload_shares_sum_to_one() {
        for kernel in [Kernel::Qaoa, Kernel::Grover, Kernel::ClassicalOnly] {
            let decision = run_pipeline(&triangle_scenario(), &quick_config(kernel)).unwrap();
            let report = workload_report(&decision);
            let sum = report.monitor + report.reduce + report.opt + report.validate + report.deploy;
            assert!((sum - 1.0).abs() < 1e-9, "{kernel:?}: shares sum to {sum}");
            assert_eq!(report.deploy, 0.0);
        }
    }

    #[test]
    fn classical_only_opt_share_is_the_baseline_share() {
        let decision =
            run_pipeline(&triangle_scenario(), &quick_config(Kernel::ClassicalOnly)).unwrap();
        let report = workload_report(&decision);
        assert_relative_eq!(
            report.opt,
            decision.ledger.t_class_opt_wall / decision.ledger.total,
            epsilon = 1e-12
        );
    }

    #[test]
    fn decided_paths_always_validate() {
        use crate::netgraph::PathValidation;
        let mut scenario = triangle_scenario();
        scenario.couplings.push(ScenarioCoupling {
            a: 0,
            b: 1,
            gamma: 2.0,
        });
        let (graph, _, demand) = scenario.build().unwrap();
        for kernel in [Kernel::Qaoa, Kernel::Grover, Kernel::ClassicalOnly] {
            let decision = run_pipeline(&scenario, &quick_config(kernel)).unwrap();
            let path = decision.path.expect("triangle is solvable");
            assert!(matches!(
                graph
                    .validate_path(&path, demand.source, demand.dest)
                    .unwrap(),
                PathValidation::Valid(_)
            ));
        }
    }

    /// First generated instance with exactly twelve edges; also used as the
    /// modeled-cost regression fixture.
    fn twelve_edge_scenario() -> Scenario {
        let params = crate::scenario::GenParams {
            nodes: 6,
            edge_prob: 0.4,
            coupling_prob: 0.1,
            ..Default::default()
        };
        let mut seed = 0;
        loop {
            if let Ok(scenario) = crate::scenario::generate(&params, seed) {
                if scenario.edges.len() == 12 {
                    return scenario;
                }
            }
            seed += 1;
        }
    }

    /// With abstract gate units the modeled kernel cost dwarfs the measured
    /// classical stages, so the optimization share dominates. Regression
    /// bound frozen after the first verified run.
    #[test]
    fn qaoa_opt_share_dominates_on_a_twelve_edge_instance() {
        let scenario = twelve_edge_scenario();
        let config = PipelineConfig {
            kernel: Kernel::Qaoa,
            seed: 7,
            shots: 2048,
            qaoa: QaoaSettings {
                max_evals: 200,
                restarts: 2,
                ..Default::default()
            },
            ..Default::default()
        };
        let decision = run_pipeline(&scenario, &config).unwrap();
        let report = workload_report(&decision);
        assert!(report.opt > 0.5, "opt share {}", report.opt);
        // Twelve edges sit exactly at the oracle limit, so the true ratio is
        // still available.
        assert!(decision.ratio.is_some());
    }

    /// Beyond the oracle limit the decision reports the shortest-path proxy
    /// instead of an optimality ratio.
    #[test]
    fn oversized_instances_report_the_baseline_proxy() {
        let params = crate::scenario::GenParams {
            nodes: 7,
            edge_prob: 0.5,
            coupling_prob: 0.1,
            ..Default::default()
        };
        let mut seed = 100;
        let scenario = loop {
            if let Ok(scenario) = crate::scenario::generate(&params, seed) {
                if scenario.edges.len() > ORACLE_EDGE_LIMIT {
                    break scenario;
                }
            }
            seed += 1;
        };
        let decision = run_pipeline(&scenario, &quick_config(Kernel::Grover)).unwrap();
        assert!(decision.feasible);
        assert!(decision.ratio.is_none());
        let proxy = decision
            .cost_vs_shortest_path
            .expect("proxy must be reported");
        assert!(proxy > 0.0);
    }

    #[test]
    fn config_validation() {
        let scenario = triangle_scenario();
        let mut config = PipelineConfig {
            shots: 0,
            ..Default::default()
        };
        assert!(run_pipeline(&scenario, &config).is_err());
        config.shots = 1;
        config.noise_p = 1.5;
        assert!(run_pipeline(&scenario, &config).is_err());
        config.noise_p = 0.0;
        config.qaoa.depth = 0;
        assert!(run_pipeline(&scenario, &config).is_err());
    }
}
