//! Desk-scale laboratory for hybrid classical/quantum route selection on
//! wireless-style network snapshots.
//!
//! The library turns a weighted directed snapshot with pairwise interference
//! couplings into a penalized diagonal Hamiltonian over edge-selection
//! variables, then attacks it three ways:
//!
//! - [`qaoa`]: alternating-layer variational minimization on a dense
//!   statevector ([`statevec`]), with seeded sampling, a depolarizing noise
//!   channel, and feasibility-checked candidate extraction;
//! - [`grover`]: amplitude amplification over a classically enumerated
//!   candidate-path space, including iterative minimum finding;
//! - [`qwalk`]: continuous-time walks on the node space with a classical
//!   diffusion contrast (an analysis tool, not a route selector).
//!
//! [`classical`] provides the baselines and exhaustive oracles everything is
//! scored against, and [`hybrid`] wires the stages into a pipeline with a
//! runtime ledger and a shortest-path fallback. [`scenario`] defines the
//! JSON instance format consumed by the `qroute` CLI.
//!
//! Numeric code is generic over [`scalar::Scalar`] (`f32` or `f64`); the
//! aliases below pin the double-precision instantiations the pipeline uses.

pub mod classical;
pub mod encoding;
pub mod grover;
pub mod hybrid;
pub mod netgraph;
pub mod qaoa;
pub mod qwalk;
pub mod scalar;
pub mod scenario;
pub mod statevec;

pub use scalar::Scalar;

pub type LinkMetrics64 = netgraph::LinkMetrics<f64>;
pub type CompositeWeights64 = netgraph::CompositeWeights<f64>;
pub type WirelessGraph64 = netgraph::WirelessGraph<f64>;
pub type QuboModel64 = encoding::QuboModel<f64>;
pub type PenaltyWeights64 = encoding::PenaltyWeights<f64>;
pub type EnergyTable64 = statevec::EnergyTable<f64>;
pub type StateVector64 = statevec::StateVector<f64>;
pub type QaoaParams64 = qaoa::QaoaParams<f64>;
pub type QaoaConfig64 = qaoa::QaoaConfig<f64>;
pub type QaoaResult64 = qaoa::QaoaResult<f64>;
pub type Candidate64 = qaoa::Candidate<f64>;
pub type CandidateSpace64 = grover::CandidateSpace<f64>;
pub type WalkHamiltonian64 = qwalk::WalkHamiltonian<f64>;
pub type WalkState64 = qwalk::WalkState<f64>;
pub type BaselineResult64 = classical::BaselineResult<f64>;
