//! Dense complex state-vector engine.
//!
//! A [`StateVector`] holds the joint pure state of a dynamically sized qubit
//! register as a flat array of 2^n amplitudes, indexed by bitstring with
//! qubit 0 as the least significant bit. Every qubit carries a [`Role`]
//! label (observer / reference / pointer / environment) so higher layers can
//! address qubits by function rather than position.
//!
//! Reduced density matrices, purity, and negativity serve as the
//! entanglement diagnostics across register cuts.

pub(crate) mod density;
mod entanglement;
pub(crate) mod gates;
mod measure;
mod state;

pub use density::{partial_trace, DensityMatrix};
pub use entanglement::negativity;
pub use gates::{
    apply_cnot, apply_single_qubit_unitary, hadamard, pauli_x, pauli_y, pauli_z, rotation_x,
};
pub(crate) use gates::apply_single_qubit_unitary_raw;
pub use measure::{born_probabilities, projective_measure, BinaryObservable, ObservableKind};
pub use state::{fidelity, Role, StateVector, MAX_QUBITS, MAX_REDUCED_QUBITS};

/// Tolerance for norm / trace / hermiticity invariant checks.
pub const INVARIANT_TOL: f64 = 1e-10;

/// Tolerance for unitarity of user-supplied 2x2 matrices.
pub const UNITARY_TOL: f64 = 1e-12;

/// Entanglement below this negativity counts as separable.
pub const SEPARABLE_TOL: f64 = 1e-9;
