use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on register size: 2^20 amplitudes (~16 MiB per state).
pub const MAX_QUBITS: usize = 20;

/// Cap on the size of reduced density matrices (2^12 = 4096 rows).
pub const MAX_REDUCED_QUBITS: usize = 12;

/// Functional label of a qubit within an experiment register.
///
/// The index distinguishes multiple qubits of the same kind, e.g.
/// `Reference(0)`, `Reference(1)` for the array `[r_i]`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Observer(u16),
    Reference(u16),
    Pointer(u16),
    Environment(u16),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Observer(i) => write!(f, "observer[{i}]"),
            Role::Reference(i) => write!(f, "reference[{i}]"),
            Role::Pointer(i) => write!(f, "pointer[{i}]"),
            Role::Environment(i) => write!(f, "environment[{i}]"),
        }
    }
}

/// Pure joint quantum state over a labelled qubit register.
///
/// Amplitudes are stored densely, indexed by bitstring with qubit 0 as the
/// least significant bit. The label map is a bijection onto
/// `{0, ..., num_qubits - 1}`.
#[derive(Clone, Debug)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
    labels: BTreeMap<Role, usize>,
}

impl StateVector {
    /// |0...0> over the given roles; qubit `i` is labelled `roles[i]`.
    pub fn zeros(roles: &[Role]) -> Result<Self> {
        if roles.is_empty() {
            return Err(Error::validation("register must contain at least one qubit"));
        }
        if roles.len() > MAX_QUBITS {
            return Err(Error::Resource {
                required: roles.len(),
                available: MAX_QUBITS,
                hint: "reduce the register size".into(),
            });
        }
        let mut labels = BTreeMap::new();
        for (pos, role) in roles.iter().enumerate() {
            if labels.insert(*role, pos).is_some() {
                return Err(Error::validation(format!("duplicate role label {role}")));
            }
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << roles.len()];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits: roles.len(),
            amps,
            labels,
        })
    }

    /// Builds a state from explicit amplitudes (unit norm within 1e-10);
    /// `amps.len()` must equal `2^roles.len()`.
    pub fn from_amplitudes(roles: &[Role], amps: &[Complex64]) -> Result<Self> {
        let mut state = StateVector::zeros(roles)?;
        if amps.len() != state.amps.len() {
            return Err(Error::validation(format!(
                "expected {} amplitudes for {} qubits, got {}",
                state.amps.len(),
                roles.len(),
                amps.len()
            )));
        }
        state.amps.copy_from_slice(amps);
        let norm = state.norm();
        if (norm - 1.0).abs() > crate::qstate::INVARIANT_TOL {
            return Err(Error::validation(format!(
                "amplitudes must have unit norm, got {norm}"
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Physical position of the qubit labelled `role`.
    pub fn position(&self, role: Role) -> Result<usize> {
        self.labels
            .get(&role)
            .copied()
            .ok_or(Error::UnknownRole(role))
    }

    /// All role labels with their positions, in role order.
    pub fn labels(&self) -> &BTreeMap<Role, usize> {
        &self.labels
    }

    pub(crate) fn check_qubit(&self, index: usize) -> Result<()> {
        if index >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// L2 norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub(crate) fn renormalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    /// Appends a fresh qubit in |0> as the new most significant bit.
    ///
    /// All prior amplitudes are preserved under the tensor embedding
    /// `|psi> -> |psi> (x) |0>`.
    pub fn extend_with_fresh_qubit(&mut self, role: Role) -> Result<usize> {
        if self.num_qubits + 1 > MAX_QUBITS {
            return Err(Error::Resource {
                required: self.num_qubits + 1,
                available: MAX_QUBITS,
                hint: "lower m*n or split the run across more trials per state".into(),
            });
        }
        if self.labels.contains_key(&role) {
            return Err(Error::validation(format!(
                "role label {role} already present in register"
            )));
        }
        let pos = self.num_qubits;
        self.labels.insert(role, pos);
        self.num_qubits += 1;
        self.amps
            .resize(1 << self.num_qubits, Complex64::new(0.0, 0.0));
        Ok(pos)
    }
}

/// |<a|b>|^2 between two equal-length pure states.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.amps.len() != b.amps.len() {
        return Err(Error::validation(
            "fidelity requires states of equal register size",
        ));
    }
    let overlap: Complex64 = a
        .amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(overlap.norm_sqr())
}
