use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boltzmann constant, exact SI definition (J/K).
pub const BOLTZMANN_J_PER_K: f64 = 1.380649e-23;

/// Landauer bound on the per-observation efficiency factor: ln 2.
pub const MIN_EFFICIENCY: f64 = std::f64::consts::LN_2;

/// Unit system for dissipation accounting. `Natural` sets k_B = T = 1 so the
/// ledger reports energy in units of k_B T.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Units {
    #[default]
    Physical,
    Natural,
}

/// Running account of the heat dissipated by recorded observations:
/// `c * k_B * T` per observation, with c >= ln 2.
///
/// The total is recomputed from the observation count on every update, so
/// ledger linearity (`total = count * c * k_B * T`) holds exactly and is
/// independent of which observables were deployed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DissipationLedger {
    pub c: f64,
    pub temperature: f64,
    pub units: Units,
    pub observation_count: u64,
    pub total_energy: f64,
}

impl DissipationLedger {
    pub fn new(c: f64, temperature: f64, units: Units) -> Result<Self> {
        if c < MIN_EFFICIENCY {
            return Err(Error::validation(format!(
                "efficiency factor c = {c} below the Landauer bound ln 2 = {MIN_EFFICIENCY}"
            )));
        }
        if units == Units::Physical && (temperature.is_nan() || temperature <= 0.0) {
            return Err(Error::validation(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        Ok(DissipationLedger {
            c,
            temperature,
            units,
            observation_count: 0,
            total_energy: 0.0,
        })
    }

    pub fn boltzmann(&self) -> f64 {
        match self.units {
            Units::Physical => BOLTZMANN_J_PER_K,
            Units::Natural => 1.0,
        }
    }

    fn effective_temperature(&self) -> f64 {
        match self.units {
            Units::Physical => self.temperature,
            Units::Natural => 1.0,
        }
    }

    /// Energy dissipated per recorded observation.
    pub fn energy_per_observation(&self) -> f64 {
        self.c * self.boltzmann() * self.effective_temperature()
    }

    /// Accrues one recorded observation.
    pub fn record_observation(&mut self) {
        self.observation_count += 1;
        self.total_energy = self.observation_count as f64 * self.energy_per_observation();
    }
}
