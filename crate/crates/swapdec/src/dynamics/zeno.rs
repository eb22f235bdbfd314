//! Repeated projective pointer measurement with no reference intervals
//! (n = 1): the quantum Zeno regime.
//!
//! With free evolution disabled the first collapse pins the outcome forever.
//! With a small x-rotation of angle epsilon per tick before each
//! measurement, a pointer prepared in a z eigenstate survives all m
//! measurements with probability cos^(2m)(epsilon / 2).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{trial_rng, BlochAngles, LedgerParams, StreamPhase};
use crate::error::{Error, Result};
use crate::observer::{perform_measurement, MeasureMode, MemoryTape};
use crate::qstate::{
    apply_single_qubit_unitary, rotation_x, BinaryObservable, ObservableKind, Role, StateVector,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ZenoConfig {
    /// Number of recorded pointer measurements per trial.
    pub m: u32,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    /// Free-evolution rotation angle per tick; 0 disables evolution.
    #[serde(default)]
    pub evolution_angle: f64,
    /// Initial pointer preparation; defaults to the z eigenstate |0>.
    #[serde(default = "zero_state")]
    pub initial_pointer: BlochAngles,
    #[serde(default)]
    pub ledger: LedgerParams,
}

fn zero_state() -> BlochAngles {
    BlochAngles { theta: 0.0, phi: 0.0 }
}

impl ZenoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::validation("m must be ≥ 1"));
        }
        if self.trials < 1 {
            return Err(Error::validation("trials must be ≥ 1"));
        }
        self.ledger.build()?;
        Ok(())
    }

    /// The deterministic first outcome when the initial state is a z
    /// eigenstate (survival is measured against it), None for genuine
    /// superpositions.
    pub fn initial_eigenvalue(&self) -> Option<u8> {
        let half = self.initial_pointer.theta / 2.0;
        if half.sin().abs() < 1e-9 {
            Some(0)
        } else if half.cos().abs() < 1e-9 {
            Some(1)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZenoTrial {
    pub outcomes: Vec<u8>,
}

impl ZenoTrial {
    pub fn constant_after_first(&self) -> bool {
        self.outcomes.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZenoResult {
    pub m: u32,
    pub trials: u64,
    pub seed: u64,
    pub evolution_angle: f64,
    pub outcomes: Vec<ZenoTrial>,
    /// Fraction of trials whose outcomes never change after the first.
    pub constant_after_first_fraction: f64,
    pub initial_eigenvalue: Option<u8>,
    /// Fraction of trials with every outcome equal to the initial
    /// eigenvalue; None when the initial state is not a z eigenstate.
    pub survival_fraction: Option<f64>,
    /// Closed-form survival cos^(2m)(epsilon/2) for eigenstate
    /// preparations.
    pub analytic_survival: Option<f64>,
    /// Memory tape of trial 0, as a serialization example of the record
    /// format.
    pub first_trial_tape: MemoryTape,
}

fn run_trial(config: &ZenoConfig, trial: u64) -> Result<(ZenoTrial, MemoryTape)> {
    let mut rng = trial_rng(config.seed, StreamPhase::Zeno, trial);
    let mut state = StateVector::zeros(&[Role::Observer(0), Role::Pointer(0)])?;
    let pointer_pos = state.position(Role::Pointer(0))?;
    apply_single_qubit_unitary(
        &mut state,
        pointer_pos,
        &config.initial_pointer.preparation_unitary(),
    )?;
    let obs = BinaryObservable::new("P1", ObservableKind::Pointer, Role::Pointer(0));
    let oq = state.position(Role::Observer(0))?;

    let mut tape = MemoryTape::new();
    let mut ledger = config.ledger.build()?;
    let mut outcomes = Vec::with_capacity(config.m as usize);
    for t in 0..u64::from(config.m) {
        if config.evolution_angle != 0.0 {
            apply_single_qubit_unitary(
                &mut state,
                pointer_pos,
                &rotation_x(config.evolution_angle),
            )?;
        }
        let record = perform_measurement(
            &mut state,
            &obs,
            oq,
            MeasureMode::Recorded,
            t,
            &mut tape,
            &mut ledger,
            &mut rng,
        )?
        .expect("recorded mode always yields a record");
        outcomes.push(record.outcome);
    }
    Ok((ZenoTrial { outcomes }, tape))
}

pub fn run_zeno(config: &ZenoConfig) -> Result<ZenoResult> {
    config.validate()?;
    let results: Vec<(ZenoTrial, MemoryTape)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<Vec<_>>>()?;

    let trials_f = config.trials as f64;
    let constant = results
        .iter()
        .filter(|(t, _)| t.constant_after_first())
        .count() as f64
        / trials_f;

    let initial_eigenvalue = config.initial_eigenvalue();
    let survival_fraction = initial_eigenvalue.map(|q| {
        results
            .iter()
            .filter(|(t, _)| t.outcomes.iter().all(|&o| o == q))
            .count() as f64
            / trials_f
    });
    let analytic_survival = initial_eigenvalue.map(|_| {
        (config.evolution_angle / 2.0)
            .cos()
            .powi(2 * config.m as i32)
    });

    let first_trial_tape = results[0].1.clone();
    Ok(ZenoResult {
        m: config.m,
        trials: config.trials,
        seed: config.seed,
        evolution_angle: config.evolution_angle,
        outcomes: results.into_iter().map(|(t, _)| t).collect(),
        constant_after_first_fraction: constant,
        initial_eigenvalue,
        survival_fraction,
        analytic_survival,
        first_trial_tape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn plus_state() -> BlochAngles {
        BlochAngles::default()
    }

    #[test]
    fn frozen_dynamics_pins_outcomes() {
        let config = ZenoConfig {
            m: 50,
            trials: 30,
            seed: 4,
            evolution_angle: 0.0,
            initial_pointer: plus_state(),
            ledger: LedgerParams::default(),
        };
        let result = run_zeno(&config).unwrap();
        assert_eq!(result.constant_after_first_fraction, 1.0);
        assert!(result.survival_fraction.is_none());
        // First outcomes vary across trials (the preparation is |+>).
        let firsts: std::collections::HashSet<u8> = result
            .outcomes
            .iter()
            .map(|t| t.outcomes[0])
            .collect();
        assert_eq!(firsts.len(), 2);
    }

    #[test]
    fn eigenstate_preparation_never_flips() {
        let config = ZenoConfig {
            m: 20,
            trials: 10,
            seed: 1,
            evolution_angle: 0.0,
            initial_pointer: zero_state(),
            ledger: LedgerParams::default(),
        };
        let result = run_zeno(&config).unwrap();
        assert_eq!(result.survival_fraction, Some(1.0));
        for trial in &result.outcomes {
            assert!(trial.outcomes.iter().all(|&o| o == 0));
        }
    }

    #[test]
    fn survival_under_evolution_matches_closed_form() {
        // epsilon = 0.2, m = 10: survival cos^20(0.1) ~ 0.90469.
        let trials = 10_000;
        let config = ZenoConfig {
            m: 10,
            trials,
            seed: 99,
            evolution_angle: 0.2,
            initial_pointer: zero_state(),
            ledger: LedgerParams::default(),
        };
        let result = run_zeno(&config).unwrap();
        let analytic = result.analytic_survival.unwrap();
        assert_relative_eq!(analytic, 0.1_f64.cos().powi(20), epsilon = 1e-15);
        let sigma = (analytic * (1.0 - analytic) / trials as f64).sqrt();
        let survival = result.survival_fraction.unwrap();
        assert!(
            (survival - analytic).abs() <= 3.0 * sigma,
            "survival {survival} vs analytic {analytic}"
        );
    }

    #[test]
    fn tape_records_every_measurement() {
        let config = ZenoConfig {
            m: 5,
            trials: 2,
            seed: 0,
            evolution_angle: 0.0,
            initial_pointer: plus_state(),
            ledger: LedgerParams::default(),
        };
        let result = run_zeno(&config).unwrap();
        assert_eq!(result.first_trial_tape.len(), 5);
        assert!(result
            .first_trial_tape
            .records()
            .iter()
            .all(|r| r.observable_id == "P1"));
    }
}
