//! Dense statevector simulation specialized for diagonal Hamiltonians.
//!
//! The only unitaries needed here are diagonal phase evolutions
//! `exp(-i*gamma*H)` (H diagonal, given as an [`EnergyTable`]) and the
//! product of single-qubit rotations `exp(-i*beta*X)` applied to every
//! qubit, so no general gate machinery exists. Measurement sampling is
//! seeded and deterministic, and the depolarizing channel is applied at the
//! outcome-distribution level, where it is exactly equivalent to the
//! density-matrix channel for computational-basis statistics (the unit tests
//! verify this against an explicit density-matrix reference).
//!
//! Qubit index `k` corresponds to bit `k` of the basis-state index, bit 0
//! being least significant.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::encoding::QuboModel;
use crate::scalar::Scalar;

/// Hard ceiling on simulated register width (2^24 amplitudes ~ 256 MiB at
/// double precision).
pub const DEFAULT_QUBIT_CAP: usize = 24;

static QUBIT_CAP: OnceLock<usize> = OnceLock::new();

/// Effective qubit cap: `QROUTE_QUBIT_CAP` may lower the default, never
/// raise it. Read once per process.
pub fn qubit_cap() -> usize {
    *QUBIT_CAP.get_or_init(|| cap_from(std::env::var("QROUTE_QUBIT_CAP").ok().as_deref()))
}

fn cap_from(var: Option<&str>) -> usize {
    match var.and_then(|s| s.trim().parse::<usize>().ok()) {
        Some(cap) if cap >= 1 => cap.min(DEFAULT_QUBIT_CAP),
        _ => DEFAULT_QUBIT_CAP,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StatevecError {
    #[error("{requested} qubits exceed the cap of {cap}")]
    QubitLimitExceeded { requested: usize, cap: usize },
    #[error("state spans {state_qubits} qubits but the energy table spans {table_qubits}")]
    SizeMismatch {
        state_qubits: usize,
        table_qubits: usize,
    },
    #[error("probabilities must be in [0,1] and sum to one: {0}")]
    InvalidProbability(&'static str),
    #[error("amplitude vector of length {0} is not a power-of-two register")]
    BadDimension(usize),
    #[error("state norm deviates from one beyond tolerance")]
    NotNormalized,
}

/// Diagonal Hamiltonian realized as its energy on every basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTable<T> {
    n_qubits: usize,
    energies: Vec<T>,
}

impl<T: Scalar> EnergyTable<T> {
    /// Tabulate a model's energy on all `2^n` bitstrings.
    pub fn from_model(model: &QuboModel<T>) -> Result<Self, StatevecError> {
        let n = model.num_vars();
        if n > qubit_cap() {
            return Err(StatevecError::QubitLimitExceeded {
                requested: n,
                cap: qubit_cap(),
            });
        }
        let energies = (0..1usize << n)
            .map(|bits| model.energy(bits).expect("bits in range"))
            .collect();
        Ok(Self {
            n_qubits: n,
            energies,
        })
    }

    /// Wrap a precomputed table; the length must be a power of two and all
    /// entries finite.
    pub fn from_energies(energies: Vec<T>) -> Result<Self, StatevecError> {
        let len = energies.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(StatevecError::BadDimension(len));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(StatevecError::InvalidProbability("energies must be finite"));
        }
        let n = len.trailing_zeros() as usize;
        if n > qubit_cap() {
            return Err(StatevecError::QubitLimitExceeded {
                requested: n,
                cap: qubit_cap(),
            });
        }
        Ok(Self {
            n_qubits: n,
            energies,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn min_energy(&self) -> T {
        self.energies.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max_energy(&self) -> T {
        self.energies
            .iter()
            .copied()
            .fold(T::neg_infinity(), T::max)
    }

    pub fn mean_energy(&self) -> T {
        self.energies.iter().copied().sum::<T>() / T::from_usize_lossy(self.energies.len())
    }

    /// Shift every energy by a constant; used by invariance tests and the
    /// spectrum-conditioning sweeps.
    pub fn shifted(&self, offset: T) -> Self {
        Self {
            n_qubits: self.n_qubits,
            energies: self.energies.iter().map(|&e| e + offset).collect(),
        }
    }
}

/// Normalized pure state over `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Uniform superposition `|+>^n`: every amplitude `2^(-n/2)`.
    pub fn plus_state(n_qubits: usize) -> Result<Self, StatevecError> {
        Self::check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        let amp = Complex::new(T::one() / T::from_usize_lossy(dim).sqrt(), T::zero());
        Ok(Self {
            n_qubits,
            amps: vec![amp; dim],
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self, StatevecError> {
        Self::check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(StatevecError::BadDimension(index));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Wrap raw amplitudes; must be a power-of-two register normalized to
    /// within a scalar-appropriate tolerance.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self, StatevecError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(StatevecError::BadDimension(len));
        }
        let n_qubits = len.trailing_zeros() as usize;
        Self::check_width(n_qubits)?;
        let norm: T = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::epsilon().sqrt() {
            return Err(StatevecError::NotNormalized);
        }
        Ok(Self { n_qubits, amps })
    }

    fn check_width(n_qubits: usize) -> Result<(), StatevecError> {
        let cap = qubit_cap();
        if n_qubits == 0 || n_qubits > cap {
            return Err(StatevecError::QubitLimitExceeded {
                requested: n_qubits,
                cap,
            });
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
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

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Diagonal phase evolution `a_x <- a_x * exp(-i*gamma*E(x))`.
    pub fn apply_phase(mut self, table: &EnergyTable<T>, gamma: T) -> Result<Self, StatevecError> {
        if table.n_qubits != self.n_qubits {
            return Err(StatevecError::SizeMismatch {
                state_qubits: self.n_qubits,
                table_qubits: table.n_qubits,
            });
        }
        for (amp, &energy) in self.amps.iter_mut().zip(&table.energies) {
            *amp *= Complex::from_polar(T::one(), -gamma * energy);
        }
        Ok(self)
    }

    /// Transverse-field mixer layer: `exp(-i*beta*X)` on every qubit.
    pub fn apply_mixer(mut self, beta: T) -> Self {
        let cos = Complex::new(beta.cos(), T::zero());
        let msin = Complex::new(T::zero(), -beta.sin());
        for qubit in 0..self.n_qubits {
            let bit = 1usize << qubit;
            for i in 0..self.amps.len() {
                if i & bit == 0 {
                    let j = i | bit;
                    let a = self.amps[i];
                    let b = self.amps[j];
                    self.amps[i] = cos * a + msin * b;
                    self.amps[j] = msin * a + cos * b;
                }
            }
        }
        self
    }

    /// Exact expectation `sum_x |a_x|^2 E(x)`.
    pub fn expectation(&self, table: &EnergyTable<T>) -> Result<T, StatevecError> {
        if table.n_qubits != self.n_qubits {
            return Err(StatevecError::SizeMismatch {
                state_qubits: self.n_qubits,
                table_qubits: table.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&table.energies)
            .map(|(a, &e)| a.norm_sqr() * e)
            .sum())
    }

    /// Multinomial measurement: `shots` draws from `|a_x|^2`, deterministic
    /// per seed.
    pub fn sample(&self, shots: u64, seed: u64) -> BTreeMap<usize, u64> {
        sample_distribution(&self.probabilities(), shots, seed)
    }
}

/// Seeded multinomial sampling from an outcome distribution via cumulative
/// inversion. Counts always sum to `shots`.
pub fn sample_distribution<T: Scalar>(probs: &[T], shots: u64, seed: u64) -> BTreeMap<usize, u64> {
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = T::zero();
    for &p in probs {
        acc += p.max(T::zero());
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen_range(T::zero()..total);
        let idx = cumulative.partition_point(|&c| c <= u).min(probs.len() - 1);
        *counts.entry(idx).or_insert(0u64) += 1;
    }
    counts
}

/// Depolarizing channel on measurement statistics:
/// `q_x = (1 - p) * p_x + p / 2^n`.
pub fn depolarize_distribution<T: Scalar>(probs: &[T], p: T) -> Result<Vec<T>, StatevecError> {
    if !(p.is_finite() && p >= T::zero() && p <= T::one()) {
        return Err(StatevecError::InvalidProbability(
            "noise strength outside [0,1]",
        ));
    }
    if probs.is_empty() {
        return Err(StatevecError::InvalidProbability("empty distribution"));
    }
    let total: T = probs.iter().copied().sum();
    if (total - T::one()).abs() > T::from_f64_lossy(1e-6) {
        return Err(StatevecError::InvalidProbability(
            "distribution does not sum to one",
        ));
    }
    let uniform = p / T::from_usize_lossy(probs.len());
    Ok(probs
        .iter()
        .map(|&q| (T::one() - p) * q + uniform)
        .collect())
}
