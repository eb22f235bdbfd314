use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observer::ObservableCatalog;

const ROW_SUM_TOL: f64 = 1e-12;

/// Time-indexed deployment probabilities: row `t / dt` gives, for each
/// catalog entry k, the probability of deploying observable k during that
/// observation window. Each row sums to 1 and has nonnegative entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub rows: Vec<Vec<f64>>,
    /// Duration of one observation, in simulation ticks.
    #[serde(default = "default_dt")]
    pub dt: u64,
}

fn default_dt() -> u64 {
    1
}

impl Schedule {
    pub fn new(rows: Vec<Vec<f64>>, dt: u64) -> Result<Self> {
        let schedule = Schedule { rows, dt };
        schedule.validate()?;
        Ok(schedule)
    }

    /// One-hot rows cycling k = row mod n_observables, repeated for `length`
    /// rows (classic round-robin deployment).
    pub fn round_robin(n_observables: usize, length: usize) -> Result<Self> {
        if n_observables == 0 {
            return Err(Error::validation("schedule needs at least one observable"));
        }
        let rows = (0..length)
            .map(|t| {
                let mut row = vec![0.0; n_observables];
                row[t % n_observables] = 1.0;
                row
            })
            .collect();
        Schedule::new(rows, 1)
    }

    /// Uniform deployment probability over all observables, every row.
    pub fn uniform(n_observables: usize, length: usize) -> Result<Self> {
        if n_observables == 0 {
            return Err(Error::validation("schedule needs at least one observable"));
        }
        let p = 1.0 / n_observables as f64;
        Schedule::new(vec![vec![p; n_observables]; length], 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dt == 0 {
            return Err(Error::validation("schedule dt must be >= 1"));
        }
        if self.rows.is_empty() {
            return Err(Error::validation("schedule must have at least one row"));
        }
        let width = self.rows[0].len();
        for (t, row) in self.rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::validation(format!(
                    "schedule row {t} has {} entries, expected {width}",
                    row.len()
                )));
            }
            if row.iter().any(|&p| p < 0.0 || !p.is_finite()) {
                return Err(Error::validation(format!(
                    "schedule row {t} has a negative or non-finite entry"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::validation(format!(
                    "schedule row {t} sums to {sum}, expected 1 within {ROW_SUM_TOL:.0e}"
                )));
            }
        }
        Ok(())
    }

    /// Number of ticks the schedule covers.
    pub fn ticks(&self) -> u64 {
        self.rows.len() as u64 * self.dt
    }

    /// Samples a catalog index for tick `t`. Deterministic given rng state.
    pub fn sample_index<R: Rng + ?Sized>(&self, t: u64, rng: &mut R) -> Result<usize> {
        let row_idx = (t / self.dt) as usize;
        let row = self.rows.get(row_idx).ok_or_else(|| {
            Error::validation(format!(
                "tick {t} outside schedule range (rows {}, dt {})",
                self.rows.len(),
                self.dt
            ))
        })?;
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (k, &p) in row.iter().enumerate() {
            acc += p;
            if u < acc {
                return Ok(k);
            }
        }
        // Guard against accumulated rounding at u ~ 1.
        Ok(row.len() - 1)
    }
}

/// Draws the observable to deploy at tick `t` with probability alpha_k(t).
pub fn next_observable<'c, R: Rng + ?Sized>(
    schedule: &Schedule,
    catalog: &'c ObservableCatalog,
    t: u64,
    rng: &mut R,
) -> Result<&'c str> {
    schedule.validate()?;
    if schedule.rows[0].len() != catalog.len() {
        return Err(Error::validation(format!(
            "schedule width {} does not match catalog size {}",
            schedule.rows[0].len(),
            catalog.len()
        )));
    }
    let k = schedule.sample_index(t, rng)?;
    Ok(&catalog.entries()[k].id)
}
