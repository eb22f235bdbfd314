//! The observer: an observable catalog deployed under a stochastic schedule,
//! a classical time-indexed outcome memory, a Landauer dissipation ledger,
//! and the commutation checks that keep reference outcomes re-identifiable.
//!
//! Measurements come in two modes. `Unitary` applies only the entangling
//! premeasurement (a basis-rotated CNOT from the target onto a dedicated
//! observer qubit) and leaves the global state pure with nothing recorded.
//! `Recorded` completes the measurement: the observer qubit is collapsed,
//! the outcome is appended to the memory tape, the ledger accrues
//! `c * k_B * T`, and the observer qubit is reset to |0> for reuse.

mod catalog;
mod identify;
mod ledger;
mod measure;
mod memory;
mod schedule;
mod sieve;

pub use catalog::{ObservableCatalog, ReferenceSpec};
pub use identify::{identify_system, Identification};
pub use ledger::{DissipationLedger, Units, BOLTZMANN_J_PER_K, MIN_EFFICIENCY};
pub use measure::{perform_measurement, premeasure, MeasureMode};
pub use memory::{classify_coarse_grained, MemoryRecord, MemoryTape};
pub use schedule::{next_observable, Schedule};
pub use sieve::{verify_predictability_sieve, SieveViolation, COMMUTATOR_TOL};
