//! End-to-end: Monte Carlo decay curve -> log-linear fit -> bootstrap error.

use swapdec::analysis::{bootstrap_rate_stderr, fit_decay};
use swapdec::dynamics::{run_decoherence_experiment, LedgerParams, RunConfig};

#[test]
fn fitted_rate_recovers_the_coupling_probability() {
    let config = RunConfig {
        n: 3,
        m: 10,
        p_int: 0.1,
        trials: 10_000,
        seed: 17,
        mode: Default::default(),
        initial_pointer: Default::default(),
        strategy: Default::default(),
        ledger: LedgerParams::default(),
        schedule: None,
    };
    let result = run_decoherence_experiment(&config).unwrap();
    let fit = fit_decay(&result).unwrap();
    let stderr = bootstrap_rate_stderr(&result, 1000, 17).unwrap();

    // The bootstrap is the error oracle: the fitted per-interval survival
    // rate must sit on 1 - p_int = 0.9 well within its own error bar, and
    // that error bar is percent-level at 10^4 trials.
    assert!(
        (fit.rate_per_interval - 0.9).abs() <= 0.01,
        "rate {} too far from 0.9",
        fit.rate_per_interval
    );
    assert!(
        (fit.rate_per_interval - 0.9).abs() <= 3.0 * stderr,
        "rate {} vs 0.9 exceeds 3 x bootstrap stderr {}",
        fit.rate_per_interval,
        stderr
    );
    assert!(stderr < 0.01, "bootstrap stderr {stderr} unexpectedly large");
    assert!(fit.r_squared > 0.99, "r^2 {}", fit.r_squared);
    assert_eq!(fit.intervals_used, 10);
}
