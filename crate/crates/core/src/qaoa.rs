//! Depth-p alternating-layer variational optimization over a diagonal
//! Hamiltonian, with a classical outer loop and candidate extraction.
//!
//! The ansatz starts from the uniform superposition and alternates the
//! diagonal phase layer `exp(-i*gamma_l*H)` with the transverse-field mixer
//! `exp(-i*beta_l*sum X_i)`. The phase generator is the fully assembled
//! routing Hamiltonian (cost plus penalties), so the objective equals the
//! penalized routing energy being minimized.
//!
//! Gradients come in two flavors. `two_point_shift_gradient` is the textbook
//! two-point rule `(F(t + pi/2) - F(t - pi/2)) / 2`, which is exact only
//! when the driving generator has a single unit frequency gap; for the
//! full-angle mixer used here it vanishes identically on every beta
//! coordinate, so `finite_difference_gradient` is the reference and the
//! default for gradient descent. The unit tests pin both behaviors down.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::encoding::{decode_bitstring, DecodedRoute, QuboModel};
use crate::netgraph::{CompositeWeights, InvalidPathReason, WirelessGraph};
use crate::scalar::Scalar;
use crate::statevec::{
    depolarize_distribution, sample_distribution, EnergyTable, StateVector, StatevecError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QaoaError {
    #[error("layer depth must be at least one")]
    InvalidDepth,
    #[error("gamma and beta vectors must both have the layer depth's length")]
    ParamLengthMismatch,
    #[error("coordinate {index} out of range for depth {depth}")]
    CoordinateOutOfRange { index: usize, depth: usize },
    #[error(transparent)]
    Statevec(#[from] StatevecError),
}

/// Variational angles for a depth-`p` ansatz.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QaoaParams<T> {
    gammas: Vec<T>,
    betas: Vec<T>,
}

impl<T: Scalar> QaoaParams<T> {
    pub fn new(gammas: Vec<T>, betas: Vec<T>) -> Result<Self, QaoaError> {
        if gammas.is_empty() {
            return Err(QaoaError::InvalidDepth);
        }
        if gammas.len() != betas.len() {
            return Err(QaoaError::ParamLengthMismatch);
        }
        if gammas.iter().chain(betas.iter()).any(|v| !v.is_finite()) {
            return Err(QaoaError::ParamLengthMismatch);
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(depth: usize) -> Result<Self, QaoaError> {
        Self::new(vec![T::zero(); depth], vec![T::zero(); depth])
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[T] {
        &self.gammas
    }

    pub fn betas(&self) -> &[T] {
        &self.betas
    }

    /// Same schedule with one extra identity layer, for warm-started deeper
    /// runs.
    pub fn padded(&self) -> Self {
        let mut gammas = self.gammas.clone();
        let mut betas = self.betas.clone();
        gammas.push(T::zero());
        betas.push(T::zero());
        Self { gammas, betas }
    }

    /// Flat layout `[gammas..., betas...]` used by the optimizers.
    fn to_flat(&self) -> Vec<T> {
        self.gammas
            .iter()
            .chain(self.betas.iter())
            .copied()
            .collect()
    }

    fn from_flat(depth: usize, flat: &[T]) -> Self {
        Self {
            gammas: flat[..depth].to_vec(),
            betas: flat[depth..].to_vec(),
        }
    }
}

/// One variational coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamCoord {
    Gamma(usize),
    Beta(usize),
}

/// Prepare the ansatz state for the given schedule.
pub fn ansatz_state<T: Scalar>(
    table: &EnergyTable<T>,
    params: &QaoaParams<T>,
) -> Result<StateVector<T>, QaoaError> {
    let mut state = StateVector::plus_state(table.n_qubits())?;
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        state = state.apply_phase(table, gamma)?.apply_mixer(beta);
    }
    Ok(state)
}

/// Exact variational objective `<psi(params)| H |psi(params)>`.
pub fn objective<T: Scalar>(
    table: &EnergyTable<T>,
    params: &QaoaParams<T>,
) -> Result<T, QaoaError> {
    Ok(ansatz_state(table, params)?.expectation(table)?)
}

fn shifted_params<T: Scalar>(params: &QaoaParams<T>, coord: ParamCoord, delta: T) -> QaoaParams<T> {
    let mut out = params.clone();
    match coord {
        ParamCoord::Gamma(l) => out.gammas[l] += delta,
        ParamCoord::Beta(l) => out.betas[l] += delta,
    }
    out
}

fn coord_index_ok<T: Scalar>(params: &QaoaParams<T>, coord: ParamCoord) -> Result<(), QaoaError> {
    let (index, depth) = match coord {
        ParamCoord::Gamma(l) | ParamCoord::Beta(l) => (l, params.depth()),
    };
    if index >= depth {
        return Err(QaoaError::CoordinateOutOfRange { index, depth });
    }
    Ok(())
}

/// Two-point rule `(F(t + pi/2) - F(t - pi/2)) / 2` on one coordinate,
/// applied verbatim. See the module notes for its (narrow) domain of
/// exactness.
pub fn two_point_shift_gradient<T: Scalar>(
    table: &EnergyTable<T>,
    params: &QaoaParams<T>,
    coord: ParamCoord,
) -> Result<T, QaoaError> {
    coord_index_ok(params, coord)?;
    let half_pi = T::from_f64_lossy(std::f64::consts::FRAC_PI_2);
    let plus = objective(table, &shifted_params(params, coord, half_pi))?;
    let minus = objective(table, &shifted_params(params, coord, -half_pi))?;
    Ok((plus - minus) / (T::one() + T::one()))
}

/// Central finite differences over all coordinates, `[gammas..., betas...]`.
pub fn finite_difference_gradient<T: Scalar>(
    table: &EnergyTable<T>,
    params: &QaoaParams<T>,
    step: T,
) -> Result<Vec<T>, QaoaError> {
    let depth = params.depth();
    let mut grad = Vec::with_capacity(2 * depth);
    let two = T::one() + T::one();
    for i in 0..2 * depth {
        let coord = if i < depth {
            ParamCoord::Gamma(i)
        } else {
            ParamCoord::Beta(i - depth)
        };
        let plus = objective(table, &shifted_params(params, coord, step))?;
        let minus = objective(table, &shifted_params(params, coord, -step))?;
        grad.push((plus - minus) / (two * step));
    }
    Ok(grad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerKind {
    NelderMead,
    GradDescent,
}

/// Outer-loop configuration.
#[derive(Debug, Clone)]
pub struct QaoaConfig<T> {
    pub depth: usize,
    pub optimizer: OptimizerKind,
    /// Objective-evaluation budget per restart.
    pub max_evals: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Optional warm start used for the first restart; must match `depth`.
    pub init: Option<QaoaParams<T>>,
}

impl<T: Scalar> Default for QaoaConfig<T> {
    fn default() -> Self {
        Self {
            depth: 2,
            optimizer: OptimizerKind::NelderMead,
            max_evals: 500,
            restarts: 3,
            seed: 0,
            init: None,
        }
    }
}

/// A decoded measurement outcome, ranked by the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate<T> {
    /// Basis-state index of the bitstring.
    pub bitstring: usize,
    /// Bits rendered in variable order (variable 0 first).
    pub bits: String,
    pub energy: T,
    pub feasible: bool,
    pub path: Option<Vec<usize>>,
    pub path_cost: Option<T>,
    pub invalid_reason: Option<InvalidPathReason>,
    /// Number of shots that produced this bitstring.
    pub count: u64,
}

/// Outcome of the variational loop.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaResult<T> {
    pub best_params: QaoaParams<T>,
    pub best_objective: T,
    /// `(evaluation index, objective)` for every objective call, across all
    /// restarts in order.
    pub objective_history: Vec<(usize, T)>,
    /// `|amplitude|^2` of the ansatz at the best parameters.
    pub final_distribution: Vec<T>,
    /// Filled by candidate extraction; empty straight out of `optimize`.
    pub candidates: Vec<Candidate<T>>,
    /// Total objective evaluations spent.
    pub evaluations: usize,
}

impl<T: Scalar> QaoaResult<T> {
    /// Running minimum of the recorded objective values.
    pub fn running_minimum(&self) -> Vec<T> {
        let mut best = T::infinity();
        self.objective_history
            .iter()
            .map(|&(_, f)| {
                best = best.min(f);
                best
            })
            .collect()
    }
}

/// Run the classical outer loop from seeded random restarts (angles uniform
/// in `[0, pi]`) and return the best schedule found. Deterministic per seed.
pub fn optimize<T: Scalar>(
    table: &EnergyTable<T>,
    config: &QaoaConfig<T>,
) -> Result<QaoaResult<T>, QaoaError> {
    if config.depth == 0 {
        return Err(QaoaError::InvalidDepth);
    }
    if let Some(init) = &config.init {
        if init.depth() != config.depth {
            return Err(QaoaError::ParamLengthMismatch);
        }
    }
    let dims = 2 * config.depth;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let pi = T::from_f64_lossy(std::f64::consts::PI);

    let mut history: Vec<(usize, T)> = Vec::new();
    let mut evaluations = 0usize;
    let mut best_flat: Option<(Vec<T>, T)> = None;

    for restart in 0..config.restarts.max(1) {
        let start: Vec<T> = match (&config.init, restart) {
            (Some(init), 0) => init.to_flat(),
            _ => (0..dims).map(|_| rng.gen_range(T::zero()..pi)).collect(),
        };

        let mut eval = |flat: &[T]| -> Result<T, QaoaError> {
            let params = QaoaParams::from_flat(config.depth, flat);
            let f = objective(table, &params)?;
            history.push((evaluations, f));
            evaluations += 1;
            Ok(f)
        };

        let (point, value) = match config.optimizer {
            OptimizerKind::NelderMead => nelder_mead(&mut eval, &start, config.max_evals)?,
            OptimizerKind::GradDescent => {
                gradient_descent(table, config.depth, &mut eval, &start, config.max_evals)?
            }
        };
        match &best_flat {
            Some((_, best)) if *best <= value => {}
            _ => best_flat = Some((point, value)),
        }
    }

    let (flat, best_objective) = best_flat.expect("at least one restart ran");
    let best_params = QaoaParams::from_flat(config.depth, &flat);
    let final_distribution = ansatz_state(table, &best_params)?.probabilities();
    Ok(QaoaResult {
        best_params,
        best_objective,
        objective_history: history,
        final_distribution,
        candidates: Vec::new(),
        evaluations,
    })
}

/// Standard Nelder-Mead simplex descent (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2) tracking the best point ever evaluated.
fn nelder_mead<T: Scalar>(
    eval: &mut dyn FnMut(&[T]) -> Result<T, QaoaError>,
    start: &[T],
    max_evals: usize,
) -> Result<(Vec<T>, T), QaoaError> {
    let dims = start.len();
    let step = T::from_f64_lossy(0.4);
    let mut evals_left = max_evals.max(dims + 2);

    let mut best_point = start.to_vec();
    let mut best_value = T::infinity();
    let mut spend = |point: &[T],
                     evals_left: &mut usize,
                     best_point: &mut Vec<T>,
                     best_value: &mut T|
     -> Result<Option<T>, QaoaError> {
        if *evals_left == 0 {
            return Ok(None);
        }
        *evals_left -= 1;
        let f = eval(point)?;
        if f < *best_value {
            *best_value = f;
            *best_point = point.to_vec();
        }
        Ok(Some(f))
    };

    // Initial simplex: the start point plus one orthogonal step per axis.
    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(dims + 1);
    let f0 = spend(start, &mut evals_left, &mut best_point, &mut best_value)?
        .expect("budget covers the initial simplex");
    simplex.push((start.to_vec(), f0));
    for d in 0..dims {
        let mut p = start.to_vec();
        p[d] += step;
        match spend(&p, &mut evals_left, &mut best_point, &mut best_value)? {
            Some(f) => simplex.push((p, f)),
            None => return Ok((best_point, best_value)),
        }
    }

    let two = T::one() + T::one();
    let half = T::one() / two;
    let tiny = T::from_f64_lossy(1e-12);
    while evals_left > 0 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objectives"));
        let spread = simplex[dims].1 - simplex[0].1;
        if spread.abs() < tiny {
            break;
        }
        // Centroid of all points but the worst.
        let mut centroid = vec![T::zero(); dims];
        for (point, _) in &simplex[..dims] {
            for (c, &x) in centroid.iter_mut().zip(point) {
                *c += x;
            }
        }
        for c in &mut centroid {
            *c /= T::from_usize_lossy(dims);
        }
        let worst = simplex[dims].clone();

        let combine = |a: T, b: T| -> Vec<T> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(&c, &w)| a * c + b * w)
                .collect()
        };

        let reflected = combine(two, -T::one());
        let fr = match spend(
            &reflected,
            &mut evals_left,
            &mut best_point,
            &mut best_value,
        )? {
            Some(f) => f,
            None => break,
        };
        if fr < simplex[0].1 {
            let expanded = combine(two + T::one(), -two);
            match spend(&expanded, &mut evals_left, &mut best_point, &mut best_value)? {
                Some(fe) if fe < fr => simplex[dims] = (expanded, fe),
                Some(_) => simplex[dims] = (reflected, fr),
                None => break,
            }
        } else if fr < simplex[dims - 1].1 {
            simplex[dims] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                combine(T::one() + half, -half) // outside
            } else {
                combine(half, half) // inside
            };
            match spend(
                &contracted,
                &mut evals_left,
                &mut best_point,
                &mut best_value,
            )? {
                Some(fc) if fc < fr.min(worst.1) => simplex[dims] = (contracted, fc),
                Some(_) => {
                    // Shrink everything toward the current best vertex.
                    let anchor = simplex[0].0.clone();
                    for entry in simplex.iter_mut().skip(1) {
                        let point: Vec<T> = anchor
                            .iter()
                            .zip(&entry.0)
                            .map(|(&a, &x)| a + half * (x - a))
                            .collect();
                        match spend(&point, &mut evals_left, &mut best_point, &mut best_value)? {
                            Some(f) => *entry = (point, f),
                            None => return Ok((best_point, best_value)),
                        }
                    }
                }
                None => break,
            }
        }
    }
    Ok((best_point, best_value))
}

/// Finite-difference gradient descent with multiplicative step adaptation.
fn gradient_descent<T: Scalar>(
    table: &EnergyTable<T>,
    depth: usize,
    eval: &mut dyn FnMut(&[T]) -> Result<T, QaoaError>,
    start: &[T],
    max_evals: usize,
) -> Result<(Vec<T>, T), QaoaError> {
    let fd_step = T::from_f64_lossy(1e-5);
    let mut rate = T::from_f64_lossy(0.1);
    let mut point = start.to_vec();
    let mut evals_left = max_evals.max(1);

    evals_left -= 1;
    let mut value = eval(&point)?;
    let mut best = (point.clone(), value);

    // Each step spends 2*dims evaluations on the gradient (not recorded in
    // the history; only accepted-point objectives are) plus one on the
    // candidate point.
    while evals_left > 0 {
        let params = QaoaParams::from_flat(depth, &point);
        let grad = finite_difference_gradient(table, &params, fd_step)?;
        let norm = grad.iter().map(|&g| g * g).sum::<T>().sqrt();
        if norm < T::from_f64_lossy(1e-10) {
            break;
        }
        let candidate: Vec<T> = point
            .iter()
            .zip(&grad)
            .map(|(&x, &g)| x - rate * g)
            .collect();
        evals_left -= 1;
        let f = eval(&candidate)?;
        if f < value {
            point = candidate;
            value = f;
            rate *= T::from_f64_lossy(1.1);
            if f < best.1 {
                best = (point.clone(), f);
            }
        } else {
            rate *= T::from_f64_lossy(0.5);
            if rate < T::from_f64_lossy(1e-12) {
                break;
            }
        }
    }
    Ok(best)
}

/// Extraction of ranked routing candidates from an outcome distribution.
#[derive(Debug, Clone)]
pub struct CandidateExtraction<T> {
    pub candidates: Vec<Candidate<T>>,
    /// Raw sampled counts per bitstring (after noise).
    pub samples: BTreeMap<usize, u64>,
    pub any_feasible: bool,
}

/// Run the outer loop, then sample and decode the optimized state: the
/// returned result carries the ranked candidate list.
#[allow(clippy::too_many_arguments)]
pub fn optimize_with_candidates<T: Scalar>(
    table: &EnergyTable<T>,
    config: &QaoaConfig<T>,
    model: &QuboModel<T>,
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
    top_k: usize,
    shots: u64,
    noise_p: T,
) -> Result<QaoaResult<T>, QaoaError> {
    let mut result = optimize(table, config)?;
    let extraction = extract_candidates(
        &result.final_distribution,
        model,
        graph,
        weights,
        s,
        d,
        top_k,
        shots,
        config.seed,
        noise_p,
    )?;
    result.candidates = extraction.candidates;
    Ok(result)
}

/// Apply sampling noise to a distribution, draw `shots` outcomes, decode
/// every distinct bitstring, and rank: feasible candidates first by decoded
/// path cost, infeasible ones by model energy, ties broken by bitstring.
#[allow(clippy::too_many_arguments)]
pub fn extract_candidates<T: Scalar>(
    distribution: &[T],
    model: &QuboModel<T>,
    graph: &WirelessGraph<T>,
    weights: &CompositeWeights<T>,
    s: usize,
    d: usize,
    top_k: usize,
    shots: u64,
    seed: u64,
    noise_p: T,
) -> Result<CandidateExtraction<T>, QaoaError> {
    let noisy = depolarize_distribution(distribution, noise_p)?;
    let samples = sample_distribution(&noisy, shots, seed);
    let mut candidates = Vec::with_capacity(samples.len());
    for (&bits, &count) in &samples {
        let energy = model
            .energy(bits)
            .map_err(|_| QaoaError::ParamLengthMismatch)?;
        let decoded = decode_bitstring(model, bits, graph, weights, s, d)
            .map_err(|_| QaoaError::ParamLengthMismatch)?;
        let candidate = match decoded {
            DecodedRoute::Valid { path, cost } => Candidate {
                bitstring: bits,
                bits: model.format_bits(bits),
                energy,
                feasible: true,
                path: Some(path),
                path_cost: Some(cost),
                invalid_reason: None,
                count,
            },
            DecodedRoute::Invalid(reason) => Candidate {
                bitstring: bits,
                bits: model.format_bits(bits),
                energy,
                feasible: false,
                path: None,
                path_cost: None,
                invalid_reason: Some(reason),
                count,
            },
        };
        candidates.push(candidate);
    }
    candidates.sort_by(|a, b| {
        b.feasible
            .cmp(&a.feasible)
            .then_with(|| {
                let ka = if a.feasible {
                    a.path_cost
                } else {
                    Some(a.energy)
                };
                let kb = if b.feasible {
                    b.path_cost
                } else {
                    Some(b.energy)
                };
                ka.partial_cmp(&kb).expect("finite candidate keys")
            })
            .then_with(|| a.bitstring.cmp(&b.bitstring))
    });
    let any_feasible = candidates.first().map(|c| c.feasible).unwrap_or(false);
    candidates.truncate(top_k.max(1));
    Ok(CandidateExtraction {
        candidates,
        samples,
        any_feasible,
    })
}
