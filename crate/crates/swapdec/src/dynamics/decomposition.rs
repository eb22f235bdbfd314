use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::Role;

/// Partition of the non-observer world W into reference and pointer
/// components with their environments: E_R (x) R = E_P (x) P = W.
///
/// The pointer set grows as environment degrees of freedom couple to the
/// tracked pointer qubit; the reference set is fixed for the lifetime of a
/// run. E_P always contains R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub reference_qubits: BTreeSet<Role>,
    pub pointer_qubits: BTreeSet<Role>,
    pub environment_r: BTreeSet<Role>,
    pub environment_p: BTreeSet<Role>,
    /// The pointer qubit whose coherence is tracked and onto which
    /// environment couplings act.
    pub tracked_pointer: Role,
}

impl Decomposition {
    /// Builds a decomposition from the reference/pointer sets and the full
    /// non-observer world; environments are the complements within `world`.
    pub fn new(
        reference: BTreeSet<Role>,
        pointer: BTreeSet<Role>,
        tracked_pointer: Role,
        world: &BTreeSet<Role>,
    ) -> Result<Self> {
        let decomp = Decomposition {
            environment_r: world.difference(&reference).copied().collect(),
            environment_p: world.difference(&pointer).copied().collect(),
            reference_qubits: reference,
            pointer_qubits: pointer,
            tracked_pointer,
        };
        decomp.validate()?;
        Ok(decomp)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.reference_qubits.is_disjoint(&self.pointer_qubits) {
            return Err(Error::validation(
                "reference and pointer components must be disjoint",
            ));
        }
        if !self.pointer_qubits.contains(&self.tracked_pointer) {
            return Err(Error::validation(
                "tracked pointer must belong to the pointer component",
            ));
        }
        if !self.environment_p.is_superset(&self.reference_qubits) {
            return Err(Error::validation(
                "the pointer environment must contain the reference component",
            ));
        }
        let world_r: BTreeSet<Role> = self
            .environment_r
            .union(&self.reference_qubits)
            .copied()
            .collect();
        let world_p: BTreeSet<Role> = self
            .environment_p
            .union(&self.pointer_qubits)
            .copied()
            .collect();
        if world_r != world_p {
            return Err(Error::validation(
                "E_R u R and E_P u P must both equal the non-observer world",
            ));
        }
        Ok(())
    }

    /// Next free pointer role index, for freshly coupled qubits.
    pub fn next_pointer_role(&self) -> Role {
        let next = self
            .pointer_qubits
            .iter()
            .filter_map(|r| match r {
                Role::Pointer(i) => Some(*i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        Role::Pointer(next)
    }

    /// Absorbs a freshly coupled degree of freedom into the pointer
    /// component (it leaves E_P and joins P, hence also E_R).
    pub fn absorb_coupled(&mut self, xi: Role) {
        self.pointer_qubits.insert(xi);
        self.environment_p.remove(&xi);
        self.environment_r.insert(xi);
    }
}
