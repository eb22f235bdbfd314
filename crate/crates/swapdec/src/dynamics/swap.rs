//! Alternating reference/pointer premeasurements as entanglement swaps.
//!
//! In the single-observer-qubit toy configuration (one qubit each for the
//! observer o, reference r, pointer p, and their environment spectators),
//! measuring R, then P, then R again walks the observer's monogamous
//! entanglement through
//!
//! ```text
//! |o (x) r> + |e_R>   ->   |o (x) p> + |e_P>   ->   |o (x) r> + |e_R>
//! ```
//!
//! with exactly one of the O:R / O:P cuts entangled after every step.
//! Switching partners un-computes the previous premeasurement so the same
//! observer qubit can re-entangle; the per-observable register mode skips
//! the un-compute and instead gives every observable its own qubit.

use serde::{Deserialize, Serialize};

use crate::dynamics::BlochAngles;
use crate::error::{Error, Result};
use crate::observer::premeasure;
use crate::qstate::{
    fidelity, negativity, BinaryObservable, ObservableKind, Role, StateVector, SEPARABLE_TOL,
};

/// Coarse-grained step label: which subsystem the measurement targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwapLabel {
    R,
    P,
}

impl std::fmt::Display for SwapLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SwapLabel::R => write!(f, "R"),
            SwapLabel::P => write!(f, "P"),
        }
    }
}

/// Observer realization for the toy sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwapMode {
    /// One shared observer qubit; switching partners un-computes the
    /// previous premeasurement. Realizes the strict alternation above.
    #[default]
    SharedObserver,
    /// A dedicated observer qubit per observable; no un-compute.
    ObserverRegister,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct SwapConfig {
    pub mode: SwapMode,
    /// Preparation of the reference qubit (superposition so entangling is
    /// nontrivial).
    pub reference_bloch: BlochAngles,
    /// Preparation of the pointer qubit.
    pub pointer_bloch: BlochAngles,
}

impl Default for SwapConfig {
    fn default() -> Self {
        SwapConfig {
            mode: SwapMode::SharedObserver,
            reference_bloch: BlochAngles::default(),
            pointer_bloch: BlochAngles::default(),
        }
    }
}

/// One step of the trace: negativities and separability flags across the
/// observer-reference and observer-pointer cuts after the step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapStep {
    pub index: usize,
    pub label: SwapLabel,
    pub negativity_or: f64,
    pub negativity_op: f64,
    pub separable_or: bool,
    pub separable_op: bool,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct SwapTrace {
    pub steps: Vec<SwapStep>,
}

/// Trace plus the final state and the fidelity of the final state against
/// the post-step-1 state (the round-trip check for sequences returning to
/// their first partner).
#[derive(Clone, Debug)]
pub struct SwapOutcome {
    pub trace: SwapTrace,
    pub final_state: StateVector,
    pub roundtrip_fidelity: Option<f64>,
}

/// Runs the toy swap sequence and records the entanglement trace.
pub fn run_swap_sequence(config: &SwapConfig, sequence: &[SwapLabel]) -> Result<SwapOutcome> {
    if sequence.is_empty() {
        return Err(Error::validation("swap sequence must not be empty"));
    }

    let roles = [
        Role::Observer(0),
        Role::Observer(1),
        Role::Reference(0),
        Role::Pointer(0),
        Role::Environment(0),
        Role::Environment(1),
    ];
    let mut state = StateVector::zeros(&roles)?;
    let r_pos = state.position(Role::Reference(0))?;
    let p_pos = state.position(Role::Pointer(0))?;
    crate::qstate::apply_single_qubit_unitary(
        &mut state,
        r_pos,
        &config.reference_bloch.preparation_unitary(),
    )?;
    crate::qstate::apply_single_qubit_unitary(
        &mut state,
        p_pos,
        &config.pointer_bloch.preparation_unitary(),
    )?;

    let obs_r = BinaryObservable::new("R1", ObservableKind::Reference, Role::Reference(0));
    let obs_p = BinaryObservable::new("P1", ObservableKind::Pointer, Role::Pointer(0));
    let shared_oq = state.position(Role::Observer(0))?;
    let register_oq = state.position(Role::Observer(1))?;
    let observer_positions: Vec<usize> = match config.mode {
        SwapMode::SharedObserver => vec![shared_oq],
        SwapMode::ObserverRegister => vec![shared_oq, register_oq],
    };

    let mut trace = SwapTrace::default();
    let mut entangled: Option<SwapLabel> = None;
    let mut post_first_step: Option<StateVector> = None;

    for (index, &label) in sequence.iter().enumerate() {
        match config.mode {
            SwapMode::SharedObserver => {
                if entangled != Some(label) {
                    // Un-compute the previous partner so the same observer
                    // qubit can re-entangle monogamously.
                    if let Some(prev) = entangled {
                        let prev_obs = if prev == SwapLabel::R { &obs_r } else { &obs_p };
                        premeasure(&mut state, prev_obs, shared_oq)?;
                    }
                    let obs = if label == SwapLabel::R { &obs_r } else { &obs_p };
                    premeasure(&mut state, obs, shared_oq)?;
                    entangled = Some(label);
                }
            }
            SwapMode::ObserverRegister => {
                let (obs, oq) = if label == SwapLabel::R {
                    (&obs_r, shared_oq)
                } else {
                    (&obs_p, register_oq)
                };
                premeasure(&mut state, obs, oq)?;
            }
        }

        let negativity_or = negativity(&state, &observer_positions, &[r_pos])?;
        let negativity_op = negativity(&state, &observer_positions, &[p_pos])?;
        trace.steps.push(SwapStep {
            index,
            label,
            negativity_or,
            negativity_op,
            separable_or: negativity_or <= SEPARABLE_TOL,
            separable_op: negativity_op <= SEPARABLE_TOL,
        });

        if index == 0 {
            post_first_step = Some(state.clone());
        }
    }

    let roundtrip_fidelity = if sequence.len() >= 2 {
        Some(fidelity(post_first_step.as_ref().unwrap(), &state)?)
    } else {
        None
    };

    Ok(SwapOutcome {
        trace,
        final_state: state,
        roundtrip_fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn run(labels: &[SwapLabel]) -> SwapOutcome {
        run_swap_sequence(&SwapConfig::default(), labels).unwrap()
    }

    #[test]
    fn single_reference_step_entangles_only_the_r_cut() {
        let out = run(&[SwapLabel::R]);
        let step = &out.trace.steps[0];
        assert_relative_eq!(step.negativity_or, 0.5, epsilon = 1e-9);
        assert_relative_eq!(step.negativity_op, 0.0, epsilon = 1e-9);
        assert!(!step.separable_or);
        assert!(step.separable_op);
    }

    #[test]
    fn swap_moves_entanglement_to_the_p_cut() {
        let out = run(&[SwapLabel::R, SwapLabel::P]);
        let step = &out.trace.steps[1];
        assert_relative_eq!(step.negativity_or, 0.0, epsilon = 1e-9);
        assert_relative_eq!(step.negativity_op, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn round_trip_returns_to_the_first_state() {
        let out = run(&[SwapLabel::R, SwapLabel::P, SwapLabel::R]);
        let last = &out.trace.steps[2];
        assert_relative_eq!(last.negativity_or, 0.5, epsilon = 1e-9);
        assert_relative_eq!(last.negativity_op, 0.0, epsilon = 1e-9);
        assert!(out.roundtrip_fidelity.unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn alternation_holds_for_longer_sequences() {
        let seq = [
            SwapLabel::R,
            SwapLabel::P,
            SwapLabel::R,
            SwapLabel::P,
            SwapLabel::P,
            SwapLabel::R,
        ];
        let out = run(&seq);
        for step in &out.trace.steps {
            let entangled_cuts =
                u8::from(step.negativity_or > 1e-6) + u8::from(step.negativity_op > 1e-6);
            assert_eq!(entangled_cuts, 1, "step {}: {step:?}", step.index);
            match step.label {
                SwapLabel::R => assert!(step.negativity_or > 1e-6),
                SwapLabel::P => assert!(step.negativity_op > 1e-6),
            }
        }
    }

    #[test]
    fn empty_sequence_rejected() {
        assert!(run_swap_sequence(&SwapConfig::default(), &[]).is_err());
    }

    #[test]
    fn register_mode_keeps_both_cuts_entangled_after_rp() {
        let config = SwapConfig {
            mode: SwapMode::ObserverRegister,
            ..SwapConfig::default()
        };
        let out = run_swap_sequence(&config, &[SwapLabel::R, SwapLabel::P]).unwrap();
        let step = &out.trace.steps[1];
        assert!(step.negativity_or > 1e-6);
        assert!(step.negativity_op > 1e-6);
    }
}
