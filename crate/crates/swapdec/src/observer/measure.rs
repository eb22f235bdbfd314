use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::observer::{DissipationLedger, MemoryRecord, MemoryTape};
use crate::qstate::{
    apply_single_qubit_unitary_raw, BinaryObservable, StateVector,
};

/// How far a measurement is carried.
///
/// `Unitary` stops after the entangling premeasurement: the record is never
/// made, nothing dissipates, and the joint state stays pure. `Recorded`
/// completes the observation: observer-qubit collapse, memory write, and
/// ledger accrual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureMode {
    #[default]
    Unitary,
    Recorded,
}

/// The entangling premeasurement: rotate the target into the observable's
/// axis frame, CNOT from the target onto the observer qubit, rotate back.
/// On |+axis> / |-axis> components this monogamously entangles the observer
/// qubit with the target.
pub fn premeasure(
    state: &mut StateVector,
    obs: &BinaryObservable,
    observer_qubit: usize,
) -> Result<()> {
    let target = state.position(obs.target)?;
    state.check_qubit(observer_qubit)?;
    apply_single_qubit_unitary_raw(state, target, &obs.frame_unitary());
    crate::qstate::apply_cnot(state, target, observer_qubit)?;
    apply_single_qubit_unitary_raw(state, target, &obs.frame_unitary_inverse());
    Ok(())
}

/// Performs one measurement of `obs` through the observer qubit at
/// `observer_qubit`.
///
/// In `Recorded` mode the observer qubit is projectively collapsed (which
/// projects the entangled target onto the matching eigenspace), the outcome
/// is appended to `memory` at tick `t`, the ledger accrues one observation,
/// and the observer qubit is reset to |0> for reuse.
#[allow(clippy::too_many_arguments)]
pub fn perform_measurement<R: Rng + ?Sized>(
    state: &mut StateVector,
    obs: &BinaryObservable,
    observer_qubit: usize,
    mode: MeasureMode,
    t: u64,
    memory: &mut MemoryTape,
    ledger: &mut DissipationLedger,
    rng: &mut R,
) -> Result<Option<MemoryRecord>> {
    premeasure(state, obs, observer_qubit)?;
    if mode == MeasureMode::Unitary {
        return Ok(None);
    }

    // Collapse the observer qubit in the computational basis.
    let (p0, _p1) = observer_qubit_probabilities(state, observer_qubit);
    let u: f64 = rng.random();
    let outcome = if u < p0 { 0u8 } else { 1u8 };
    collapse_qubit(state, observer_qubit, outcome);

    // Reset the observer qubit to |0> so it can be redeployed.
    if outcome == 1 {
        apply_single_qubit_unitary_raw(state, observer_qubit, &crate::qstate::pauli_x());
    }

    let record = MemoryRecord {
        t,
        observable_id: obs.id.clone(),
        kind: obs.kind,
        outcome,
    };
    memory.append(record.clone())?;
    ledger.record_observation();
    Ok(Some(record))
}

fn observer_qubit_probabilities(state: &StateVector, qubit: usize) -> (f64, f64) {
    let bit = 1usize << qubit;
    let mut p0 = 0.0;
    let mut p1 = 0.0;
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if idx & bit == 0 {
            p0 += amp.norm_sqr();
        } else {
            p1 += amp.norm_sqr();
        }
    }
    (p0, p1)
}

fn collapse_qubit(state: &mut StateVector, qubit: usize, outcome: u8) {
    let bit = 1usize << qubit;
    let keep_set = outcome == 1;
    for (idx, amp) in state.amplitudes_mut().iter_mut().enumerate() {
        if (idx & bit != 0) != keep_set {
            *amp = Complex64::new(0.0, 0.0);
        }
    }
    state.renormalize();
}
