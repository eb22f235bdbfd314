//! Environment-coupling Monte Carlo: the exponential decay of pointer
//! coherence under interleaved reference measurements.
//!
//! Each cycle executes n-1 recorded reference measurements, each opening one
//! coupling opportunity with probability `p_int`, followed by the pointer
//! slot (a recorded pointer measurement, or a nondestructive coherence
//! readout in the default tracking mode). A trial stays "pure" while no
//! coupling has fired; the analytic law is
//! `Prob(pure after m cycles) = (1 - p_int)^(m (n-1))`.
//!
//! Coupling events are all-or-nothing CNOTs onto fresh |0> ancillas, so the
//! first firing already drives the tracked qubit's reduced state to its
//! dephased fixed point; later firings leave every reported quantity
//! unchanged. The default `Compact` register strategy therefore materializes
//! only the first coupling ancilla and counts the rest, which is exact and
//! keeps the register bounded for arbitrarily long runs. `FullRegister`
//! allocates one ancilla per firing and is budget-checked upfront against
//! the worst case m (n-1).

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{couple_environment, trial_rng, BlochAngles, Decomposition, StreamPhase};
use crate::error::{Error, Result};
use crate::observer::{
    next_observable, perform_measurement, DissipationLedger, MeasureMode, MemoryTape,
    ObservableCatalog, Schedule, Units,
};
use crate::qstate::{
    partial_trace, BinaryObservable, ObservableKind, Role, StateVector, MAX_QUBITS,
};

/// How coupling ancillas are materialized in the register.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegisterStrategy {
    /// Materialize the first coupling; count later ones (exact, bounded).
    #[default]
    Compact,
    /// One fresh ancilla per firing; requires the worst case m (n-1)
    /// ancillas to fit the qubit cap.
    FullRegister,
}

/// Dissipation accounting parameters for a run's observer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct LedgerParams {
    /// Efficiency factor c >= ln 2.
    pub efficiency: f64,
    /// Temperature in kelvin (ignored in natural units).
    pub temperature: f64,
    pub units: Units,
}

impl Default for LedgerParams {
    fn default() -> Self {
        LedgerParams {
            efficiency: std::f64::consts::LN_2,
            temperature: 300.0,
            units: Units::Physical,
        }
    }
}

impl LedgerParams {
    pub fn build(&self) -> Result<DissipationLedger> {
        DissipationLedger::new(self.efficiency, self.temperature, self.units)
    }
}

/// Full configuration of a decoherence run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// Observations per cycle: n-1 reference plus one pointer slot.
    pub n: u32,
    /// Cycle count.
    pub m: u32,
    /// Coupling probability per reference interval.
    pub p_int: f64,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    /// Pointer handling: `Unitary` reads coherence nondestructively,
    /// `Recorded` collapses and records the pointer each cycle.
    #[serde(default)]
    pub mode: MeasureMode,
    #[serde(default)]
    pub initial_pointer: BlochAngles,
    #[serde(default)]
    pub strategy: RegisterStrategy,
    #[serde(default)]
    pub ledger: LedgerParams,
    /// Explicit deployment schedule. When given it must be one-hot over
    /// (reference, pointer) and encode exactly the declared cycle protocol:
    /// n-1 reference slots then one pointer slot, m times.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Schedule>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::validation("n must be ≥ 1"));
        }
        if self.m < 1 {
            return Err(Error::validation("m must be ≥ 1"));
        }
        if self.trials < 1 {
            return Err(Error::validation("trials must be ≥ 1"));
        }
        if !(0.0..=1.0).contains(&self.p_int) {
            return Err(Error::validation(format!(
                "p_int must lie in [0, 1], got {}",
                self.p_int
            )));
        }
        self.ledger.build()?;
        if let Some(schedule) = &self.schedule {
            schedule.validate()?;
            let canonical = decay_schedule(self.n, self.m);
            if schedule != &canonical {
                return Err(Error::validation(format!(
                    "schedule must encode the declared cycle protocol: {} one-hot rows \
                     of width 2 deploying the reference observable for the first {} slots \
                     of each cycle and the pointer observable for the last",
                    u64::from(self.n) * u64::from(self.m),
                    self.n - 1
                )));
            }
        }
        Ok(())
    }

    /// Coupling opportunities over the whole run.
    pub fn coupling_opportunities(&self) -> u64 {
        u64::from(self.m) * u64::from(self.n - 1)
    }

    /// Worst-case register size under the configured strategy:
    /// 2 observer qubits (one per catalog observable) + 1 reference +
    /// 1 pointer + coupling ancillas.
    pub fn required_qubits(&self) -> usize {
        let core = 4usize;
        let ancillas = match self.strategy {
            RegisterStrategy::Compact => usize::from(self.coupling_opportunities() > 0),
            RegisterStrategy::FullRegister => self.coupling_opportunities() as usize,
        };
        core + ancillas
    }

    fn check_budget(&self) -> Result<()> {
        let required = self.required_qubits();
        if required > MAX_QUBITS {
            return Err(Error::Resource {
                required,
                available: MAX_QUBITS,
                hint: "lower m*n, or use the compact register strategy".into(),
            });
        }
        Ok(())
    }
}

/// Per-cycle ensemble statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleStats {
    /// 1-based cycle index.
    pub cycle: u32,
    /// Fraction of trials with zero coupling events so far.
    pub fraction_pure: f64,
    /// Ensemble average of |rho_01| of the tracked pointer qubit.
    pub mean_coherence: f64,
    /// Ensemble average of Tr(rho^2) of the tracked pointer qubit
    /// (cross-check; not part of the CSV schema).
    pub mean_pointer_purity: f64,
    /// (1 - p_int)^(cycle (n-1)).
    pub analytic_pure: f64,
}

/// Dissipation summary of a run (every trial accrues the same count).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerSummary {
    pub c: f64,
    pub temperature: f64,
    pub units: Units,
    pub boltzmann: f64,
    pub observations_per_trial: u64,
    pub energy_per_trial: f64,
    /// Action form of the cost: energy x dt, with dt = 1 tick.
    pub action_per_trial: f64,
    pub dt_ticks: u64,
}

/// Monte Carlo estimates of purity survival and pointer coherence per cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayResult {
    pub n: u32,
    pub m: u32,
    pub p_int: f64,
    pub trials: u64,
    pub seed: u64,
    pub initial_coherence: f64,
    pub cycles: Vec<CycleStats>,
    /// Histogram: index c-1 counts trials whose first coupling fired in
    /// cycle c. Feeds bootstrap resampling of the decay fit.
    pub decohered_at_cycle: Vec<u64>,
    pub never_coupled: u64,
    pub ledger: LedgerSummary,
    /// Whether the reference outcomes identified the system in every trial
    /// window (they do by construction: reference qubits sit in fixed
    /// eigenstates).
    pub system_identified: bool,
}

/// Closed-form survival law: probability that no coupling fired after m
/// cycles of n-1 reference intervals each.
pub fn analytic_prob_pure(p_int: f64, m: u32, n: u32) -> f64 {
    let exponent = i32::try_from(u64::from(m) * u64::from(n.saturating_sub(1))).unwrap_or(i32::MAX);
    (1.0 - p_int).powi(exponent)
}

struct TrialOutcome {
    per_cycle: Vec<(bool, f64, f64)>,
    first_coupling_cycle: Option<u32>,
    identified: bool,
    observations: u64,
}

fn decay_catalog() -> ObservableCatalog {
    ObservableCatalog::new(vec![
        BinaryObservable::new("R1", ObservableKind::Reference, Role::Reference(0)),
        BinaryObservable::new("P1", ObservableKind::Pointer, Role::Pointer(0)),
    ])
    .expect("static catalog is valid")
}

/// One-hot schedule deploying R1 for the first n-1 slots of each cycle and
/// P1 for the last, over all m cycles.
fn decay_schedule(n: u32, m: u32) -> Schedule {
    let rows = (0..u64::from(n) * u64::from(m))
        .map(|t| {
            if (t % u64::from(n)) < u64::from(n - 1) {
                vec![1.0, 0.0]
            } else {
                vec![0.0, 1.0]
            }
        })
        .collect();
    Schedule::new(rows, 1).expect("one-hot rows are valid")
}

fn run_trial(config: &RunConfig, trial: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(config.seed, StreamPhase::Decay, trial);
    let catalog = decay_catalog();
    let schedule = config
        .schedule
        .clone()
        .unwrap_or_else(|| decay_schedule(config.n, config.m));

    let roles = [
        Role::Observer(0),
        Role::Observer(1),
        Role::Reference(0),
        Role::Pointer(0),
    ];
    let mut state = StateVector::zeros(&roles)?;
    let pointer_pos = state.position(Role::Pointer(0))?;
    crate::qstate::apply_single_qubit_unitary(
        &mut state,
        pointer_pos,
        &config.initial_pointer.preparation_unitary(),
    )?;

    let world = [Role::Reference(0), Role::Pointer(0)].into();
    let mut decomp = Decomposition::new(
        [Role::Reference(0)].into(),
        [Role::Pointer(0)].into(),
        Role::Pointer(0),
        &world,
    )?;

    let observer_for = |obs: &BinaryObservable, state: &StateVector| -> Result<usize> {
        match obs.kind {
            ObservableKind::Reference => state.position(Role::Observer(0)),
            ObservableKind::Pointer => state.position(Role::Observer(1)),
        }
    };

    let mut tape = MemoryTape::new();
    let mut ledger = config.ledger.build()?;
    let mut couplings_fired = 0u64;
    let mut first_coupling_cycle = None;
    let mut per_cycle = Vec::with_capacity(config.m as usize);

    for t in 0..u64::from(config.n) * u64::from(config.m) {
        let id = next_observable(&schedule, &catalog, t, &mut rng)?.to_owned();
        let obs = catalog.get(&id).expect("scheduled id is in catalog");
        match obs.kind {
            ObservableKind::Reference => {
                let oq = observer_for(obs, &state)?;
                perform_measurement(
                    &mut state,
                    obs,
                    oq,
                    MeasureMode::Recorded,
                    t,
                    &mut tape,
                    &mut ledger,
                    &mut rng,
                )?;
                // Each reference interval opens one coupling opportunity.
                let materialize = config.strategy == RegisterStrategy::FullRegister
                    || couplings_fired == 0;
                let fired = if materialize {
                    couple_environment(&mut state, &mut decomp, &mut rng, config.p_int)?
                } else {
                    // The reduced pointer state is already at its dephased
                    // fixed point; count the event without register growth.
                    rng.random::<f64>() < config.p_int
                };
                if fired {
                    couplings_fired += 1;
                    if first_coupling_cycle.is_none() {
                        first_coupling_cycle = Some((t / u64::from(config.n)) as u32 + 1);
                    }
                }
            }
            ObservableKind::Pointer => {
                if config.mode == MeasureMode::Recorded {
                    let oq = observer_for(obs, &state)?;
                    perform_measurement(
                        &mut state,
                        obs,
                        oq,
                        MeasureMode::Recorded,
                        t,
                        &mut tape,
                        &mut ledger,
                        &mut rng,
                    )?;
                }
                let rho = partial_trace(&state, &[pointer_pos])?;
                per_cycle.push((
                    couplings_fired == 0,
                    rho.entry(0, 1).norm(),
                    rho.purity(),
                ));
            }
        }
    }

    let refspec = crate::observer::ReferenceSpec::new([("R1".to_string(), 0u8)].into());
    let window = (0, u64::from(config.n) * u64::from(config.m));
    let identified = crate::observer::identify_system(&tape, &refspec, window)
        == crate::observer::Identification::Identified;

    Ok(TrialOutcome {
        per_cycle,
        first_coupling_cycle,
        identified,
        observations: ledger.observation_count,
    })
}

/// Runs the full Monte Carlo experiment. Trials execute in parallel; the
/// aggregation is a deterministic reduction in trial order, so results are
/// independent of thread count.
pub fn run_decoherence_experiment(config: &RunConfig) -> Result<DecayResult> {
    config.validate()?;
    config.check_budget()?;

    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<Vec<_>>>()?;

    let m = config.m as usize;
    let trials_f = config.trials as f64;
    let mut cycles = Vec::with_capacity(m);
    for c in 0..m {
        let mut pure = 0u64;
        let mut coherence_sum = 0.0;
        let mut purity_sum = 0.0;
        for outcome in &outcomes {
            let (is_pure, coherence, purity) = outcome.per_cycle[c];
            pure += u64::from(is_pure);
            coherence_sum += coherence;
            purity_sum += purity;
        }
        cycles.push(CycleStats {
            cycle: c as u32 + 1,
            fraction_pure: pure as f64 / trials_f,
            mean_coherence: coherence_sum / trials_f,
            mean_pointer_purity: purity_sum / trials_f,
            analytic_pure: analytic_prob_pure(config.p_int, c as u32 + 1, config.n),
        });
    }

    let mut decohered_at_cycle = vec![0u64; m];
    let mut never_coupled = 0u64;
    for outcome in &outcomes {
        match outcome.first_coupling_cycle {
            Some(c) => decohered_at_cycle[c as usize - 1] += 1,
            None => never_coupled += 1,
        }
    }

    let observations_per_trial = outcomes.first().map_or(0, |o| o.observations);
    let ledger = config.ledger.build()?;
    let energy_per_trial = observations_per_trial as f64 * ledger.energy_per_observation();
    let dt_ticks = 1u64;

    Ok(DecayResult {
        n: config.n,
        m: config.m,
        p_int: config.p_int,
        trials: config.trials,
        seed: config.seed,
        initial_coherence: config.initial_pointer.initial_coherence(),
        cycles,
        decohered_at_cycle,
        never_coupled,
        ledger: LedgerSummary {
            c: ledger.c,
            temperature: ledger.temperature,
            units: ledger.units,
            boltzmann: ledger.boltzmann(),
            observations_per_trial,
            energy_per_trial,
            action_per_trial: energy_per_trial * dt_ticks as f64,
            dt_ticks,
        },
        system_identified: outcomes.iter().all(|o| o.identified),
    })
}
