//! swapdec: a qubit-level decoherence simulator.
//!
//! Decoherence is modelled as bookkeeping at the observer-world boundary:
//! an observer deploys binary reference observables (which identify the
//! system) and pointer observables (which read its state) under a stochastic
//! schedule, paying a Landauer cost per recorded outcome. Alternating
//! reference and pointer measurements swap the observer's monogamous
//! entanglement between the reference and pointer components; environment
//! couplings during reference intervals destroy pointer coherence at an
//! exponential rate, recovering the familiar decay law, the quantum Zeno
//! limit, and Leggett-Garg violations for coherent runs.
//!
//! Crate layout:
//! - [`qstate`]: dense state-vector engine with measurement, partial trace,
//!   and negativity diagnostics.
//! - [`observer`]: observable catalog, deployment schedule, memory tape,
//!   dissipation ledger, and predictability-sieve checks.
//! - [`dynamics`]: swap traces, environment-coupling Monte Carlo, Zeno runs,
//!   and Leggett-Garg trajectory generation.
//! - [`analysis`]: correlators, inequality evaluation, and decay fitting.
//! - [`config`] / [`report`]: experiment configuration and serialization.

pub mod analysis;
pub mod config;
pub mod dynamics;
mod error;
pub mod observer;
pub mod qstate;
pub mod report;

pub use error::{Error, Result};
