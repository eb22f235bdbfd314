//! Statistics over trajectories: temporal correlators, the two-time
//! inequality K = C21 + C32 - C31 <= 1, and log-linear decay fitting.
//!
//! All functions are pure over immutable inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::DecayResult;
use crate::error::{Error, Result};

/// Mean of the products of outcome pairs after mapping {0, 1} -> {-1, +1}.
pub fn correlator(pairs: &[(u8, u8)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::validation("correlator requires at least one pair"));
    }
    let sum: f64 = pairs
        .iter()
        .map(|&(a, b)| spin(a) * spin(b))
        .sum();
    Ok(sum / pairs.len() as f64)
}

/// Correlator plus its standard error (sample std of the products over
/// sqrt(n)).
pub fn correlator_stats(pairs: &[(u8, u8)]) -> Result<(f64, f64)> {
    let mean = correlator(pairs)?;
    let n = pairs.len() as f64;
    if pairs.len() < 2 {
        return Ok((mean, 0.0));
    }
    let var: f64 = pairs
        .iter()
        .map(|&(a, b)| {
            let d = spin(a) * spin(b) - mean;
            d * d
        })
        .sum::<f64>()
        / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

fn spin(bit: u8) -> f64 {
    if bit == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Correlators, the K parameter, and the violation verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LGStats {
    pub c21: f64,
    pub c32: f64,
    pub c31: f64,
    pub k_value: f64,
    /// Standard errors of (c21, c32, c31); zeros when unknown.
    pub std_errors: [f64; 3],
    pub trials_per_pair: u64,
    /// K > 1 (plus three combined standard errors, when errors are
    /// supplied).
    pub violation: bool,
}

impl LGStats {
    /// Combined standard error of K.
    pub fn k_stderr(&self) -> f64 {
        self.std_errors.iter().map(|e| e * e).sum::<f64>().sqrt()
    }
}

/// Evaluates the inequality from bare correlators (no error information).
pub fn lg_evaluate(c21: f64, c32: f64, c31: f64) -> LGStats {
    lg_evaluate_with_errors(c21, c32, c31, [0.0; 3], 0)
}

/// Evaluates the inequality with per-correlator standard errors; the
/// violation flag requires K to clear 1 by three combined standard errors.
pub fn lg_evaluate_with_errors(
    c21: f64,
    c32: f64,
    c31: f64,
    std_errors: [f64; 3],
    trials_per_pair: u64,
) -> LGStats {
    let k_value = c21 + c32 - c31;
    let combined = std_errors.iter().map(|e| e * e).sum::<f64>().sqrt();
    LGStats {
        c21,
        c32,
        c31,
        k_value,
        std_errors,
        trials_per_pair,
        violation: k_value > 1.0 + 3.0 * combined,
    }
}

/// Empirical decay-rate estimate from log-linear regression.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Fitted (1 - p_int): exp(slope) of ln(fraction_pure) against
    /// cycle (n - 1).
    pub rate_per_interval: f64,
    pub r_squared: f64,
    /// Cycles with nonzero survival counts that entered the fit.
    pub intervals_used: usize,
}

/// Least-squares fit of ln(fraction_pure) against cycle (n-1). Cycles with
/// zero surviving trials are excluded rather than regularized.
pub fn fit_decay(decay: &DecayResult) -> Result<DecayFit> {
    if decay.n < 2 {
        return Err(Error::InsufficientData(
            "decay fit needs n >= 2 (no reference intervals, nothing decays)".into(),
        ));
    }
    let points: Vec<(f64, f64)> = decay
        .cycles
        .iter()
        .filter(|c| c.fraction_pure > 0.0)
        .map(|c| {
            (
                f64::from(c.cycle) * f64::from(decay.n - 1),
                c.fraction_pure.ln(),
            )
        })
        .collect();
    fit_log_points(&points)
}

fn fit_log_points(points: &[(f64, f64)]) -> Result<DecayFit> {
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "decay fit needs at least 3 cycles with nonzero survival, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x: f64 = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y: f64 = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData(
            "decay fit needs at least two distinct interval counts".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot <= 1e-30 {
        // Flat data fit exactly by a flat line.
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(DecayFit {
        rate_per_interval: slope.exp(),
        r_squared,
        intervals_used: points.len(),
    })
}

/// Bootstrap standard error of `rate_per_interval`: trials are resampled
/// from the first-coupling-cycle histogram, the survival curve is rebuilt,
/// and the fit repeated per resample.
pub fn bootstrap_rate_stderr(decay: &DecayResult, resamples: u32, seed: u64) -> Result<f64> {
    if resamples < 2 {
        return Err(Error::validation("bootstrap needs at least 2 resamples"));
    }
    // Categories: first coupling in cycle c (index c-1) or never (index m).
    let m = decay.cycles.len();
    let mut weights: Vec<u64> = decay.decohered_at_cycle.clone();
    weights.push(decay.never_coupled);
    let total: u64 = weights.iter().sum();
    if total == 0 {
        return Err(Error::InsufficientData("no trials to resample".into()));
    }
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, &w| {
            *acc += w as f64 / total as f64;
            Some(*acc)
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rates = Vec::with_capacity(resamples as usize);
    for _ in 0..resamples {
        let mut counts = vec![0u64; m + 1];
        for _ in 0..total {
            let u: f64 = rng.random();
            let idx = cumulative.iter().position(|&c| u < c).unwrap_or(m);
            counts[idx] += 1;
        }
        // Survivors at cycle c: first coupling strictly after c.
        let mut points = Vec::with_capacity(m);
        for c in 0..m {
            let survivors: u64 = counts[c + 1..].iter().sum();
            if survivors > 0 {
                let frac = survivors as f64 / total as f64;
                points.push((
                    (c as f64 + 1.0) * f64::from(decay.n - 1),
                    frac.ln(),
                ));
            }
        }
        if let Ok(fit) = fit_log_points(&points) {
            rates.push(fit.rate_per_interval);
        }
    }
    if rates.len() < 2 {
        return Err(Error::InsufficientData(
            "too few successful bootstrap fits".into(),
        ));
    }
    let n = rates.len() as f64;
    let mean = rates.iter().sum::<f64>() / n;
    let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(var.sqrt())
}
