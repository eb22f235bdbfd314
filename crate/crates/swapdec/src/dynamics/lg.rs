//! Leggett-Garg trajectory generation.
//!
//! A pointer qubit starts in the outcome-0 eigenstate of the z observable
//! and rotates about x by theta = omega * tau per interval. Measurements at
//! t1, t2, t3 are projective and recorded. Correlators are estimated
//! pairwise: three separate batches, each measuring only at the two
//! relevant times, so the intermediate collapse never contaminates C31.
//! The decohered control measures at every time within one trajectory.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{trial_rng, LedgerParams, StreamPhase};
use crate::error::{Error, Result};
use crate::observer::{perform_measurement, MeasureMode, MemoryTape};
use crate::qstate::{
    apply_single_qubit_unitary, rotation_x, BinaryObservable, ObservableKind, Role, StateVector,
};

/// Outcome pairs for the three two-time batches at one theta.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LgBatches {
    /// (q1, q2) from trials measured at t1 and t2.
    pub pairs_21: Vec<(u8, u8)>,
    /// (q2, q3) from trials measured at t2 and t3.
    pub pairs_32: Vec<(u8, u8)>,
    /// (q1, q3) from trials measured at t1 and t3.
    pub pairs_31: Vec<(u8, u8)>,
}

struct LgTimeline {
    omega: f64,
    tau: u64,
}

impl LgTimeline {
    /// Evolves across one inter-measurement interval: rotation by
    /// omega * tau about x (omega per tick, tau ticks).
    fn evolve_interval(&self, state: &mut StateVector, pointer_pos: usize) -> Result<()> {
        let angle = self.omega * self.tau as f64;
        if angle != 0.0 {
            apply_single_qubit_unitary(state, pointer_pos, &rotation_x(angle))?;
        }
        Ok(())
    }
}

fn lg_trial<R: rand::Rng + ?Sized>(
    timeline: &LgTimeline,
    measure_at: &[u8],
    rng: &mut R,
) -> Result<Vec<u8>> {
    let mut state = StateVector::zeros(&[Role::Observer(0), Role::Pointer(0)])?;
    let pointer_pos = state.position(Role::Pointer(0))?;
    let obs = BinaryObservable::new("P1", ObservableKind::Pointer, Role::Pointer(0));
    let oq = state.position(Role::Observer(0))?;
    let mut tape = MemoryTape::new();
    let mut ledger = LedgerParams::default().build()?;

    let mut outcomes = Vec::with_capacity(measure_at.len());
    for time in 1u8..=3 {
        timeline.evolve_interval(&mut state, pointer_pos)?;
        if measure_at.contains(&time) {
            let record = perform_measurement(
                &mut state,
                &obs,
                oq,
                MeasureMode::Recorded,
                u64::from(time) * timeline.tau,
                &mut tape,
                &mut ledger,
                rng,
            )?
            .expect("recorded mode always yields a record");
            outcomes.push(record.outcome);
        }
    }
    Ok(outcomes)
}

/// Generates the three pairwise LG batches at theta = omega * tau.
///
/// `theta_index` keys the RNG streams so grid points never share draws.
pub fn generate_lg_trajectories(
    omega: f64,
    tau: u64,
    trials: u64,
    seed: u64,
    theta_index: u32,
) -> Result<LgBatches> {
    if trials < 1 {
        return Err(Error::validation("trials must be ≥ 1"));
    }
    if tau < 1 {
        return Err(Error::validation("tau must be ≥ 1"));
    }
    let timeline = LgTimeline { omega, tau };

    let run_batch = |pair: u32, times: [u8; 2]| -> Result<Vec<(u8, u8)>> {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(seed, StreamPhase::LgPair { theta_index, pair }, trial);
                let outcomes = lg_trial(&timeline, &times, &mut rng)?;
                Ok((outcomes[0], outcomes[1]))
            })
            .collect()
    };

    Ok(LgBatches {
        pairs_21: run_batch(0, [1, 2])?,
        pairs_32: run_batch(1, [2, 3])?,
        pairs_31: run_batch(2, [1, 3])?,
    })
}

/// Fully decohered control: every trajectory is measured at t1, t2, and t3,
/// so the t2 collapse is always present. Classical (macrorealist) statistics
/// obey K <= 1.
pub fn generate_lg_control(
    omega: f64,
    tau: u64,
    trials: u64,
    seed: u64,
    theta_index: u32,
) -> Result<Vec<(u8, u8, u8)>> {
    if trials < 1 {
        return Err(Error::validation("trials must be ≥ 1"));
    }
    if tau < 1 {
        return Err(Error::validation("tau must be ≥ 1"));
    }
    let timeline = LgTimeline { omega, tau };
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, StreamPhase::LgControl { theta_index }, trial);
            let outcomes = lg_trial(&timeline, &[1, 2, 3], &mut rng)?;
            Ok((outcomes[0], outcomes[1], outcomes[2]))
        })
        .collect()
}
