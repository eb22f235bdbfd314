use serde::{Deserialize, Serialize};

use crate::observer::{MemoryTape, ReferenceSpec};

/// Verdict of a system-identification check over a tape window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identification {
    /// Every expected reference outcome was obtained (latest record wins).
    Identified,
    /// Some latest reference record contradicts the expected bit.
    NotIdentified,
    /// Some expected reference observable has no record in the window.
    Incomplete,
}

/// Checks whether the tape identifies the system within `window` (inclusive
/// tick range): the latest record for each expected reference observable must
/// match its expected bit.
///
/// A mismatch dominates a missing key: one contradicted reference outcome
/// already falsifies identification, so `NotIdentified` is returned even if
/// other keys are still unrecorded. An empty spec is vacuously `Identified`.
pub fn identify_system(
    memory: &MemoryTape,
    spec: &ReferenceSpec,
    window: (u64, u64),
) -> Identification {
    let (lo, hi) = window;
    let mut missing = false;
    for (id, &expected) in &spec.expected {
        let latest = memory
            .records()
            .iter()
            .rev()
            .find(|r| r.t >= lo && r.t <= hi && r.observable_id == *id);
        match latest {
            Some(record) if record.outcome == expected => {}
            Some(_) => return Identification::NotIdentified,
            None => missing = true,
        }
    }
    if missing {
        Identification::Incomplete
    } else {
        Identification::Identified
    }
}
