//! swapdec command-line runner.
//!
//! Loads a JSON experiment configuration, dispatches to the simulation
//! engine, and writes plot-ready CSV tables plus a `summary.json` with the
//! effective configuration echoed back. Exit codes: 0 success, 1 validation
//! or config error, 2 resource limit, 3 insufficient data.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use swapdec::analysis::{
    bootstrap_rate_stderr, correlator_stats, fit_decay, lg_evaluate_with_errors, DecayFit,
};
use swapdec::config::{
    ExperimentConfig, ExperimentKind, ExperimentParams, SeedSource,
};
use swapdec::dynamics::{
    generate_lg_control, generate_lg_trajectories, run_decoherence_experiment, run_swap_sequence,
    run_zeno, SwapConfig, SwapTrace,
};
use swapdec::observer::{verify_predictability_sieve, SieveViolation, Units};
use swapdec::report::{
    to_json_17, write_decay_csv, write_lg_csv, write_swap_csv, write_tape_csv, write_zeno_csv,
    LgRow, Summary, ToolInfo,
};
use swapdec::Error;

#[derive(Parser)]
#[command(name = "swapdec", version, about = "Decoherence simulator: scheduled measurements, swap traces, Landauer accounting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement-swap trace over an R/P measurement sequence
    SwapTrace(RunArgs),
    /// Environment-coupling Monte Carlo of pointer-coherence decay
    Decay(RunArgs),
    /// Repeated projective pointer measurement (n = 1 regime)
    Zeno(RunArgs),
    /// Leggett-Garg correlators over a theta grid
    Lg(RunArgs),
    /// Predictability-sieve commutation check of an observable catalog
    SieveCheck(RunArgs),
}

impl Command {
    fn kind(&self) -> ExperimentKind {
        match self {
            Command::SwapTrace(_) => ExperimentKind::SwapTrace,
            Command::Decay(_) => ExperimentKind::Decay,
            Command::Zeno(_) => ExperimentKind::Zeno,
            Command::Lg(_) => ExperimentKind::Lg,
            Command::SieveCheck(_) => ExperimentKind::SieveCheck,
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::SwapTrace(a)
            | Command::Decay(a)
            | Command::Zeno(a)
            | Command::Lg(a)
            | Command::SieveCheck(a) => a,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON experiment configuration
    #[arg(long)]
    config: PathBuf,

    /// Seed override (wins over the config seed)
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory for CSV tables and summary.json
    #[arg(long)]
    out: Option<PathBuf>,

    /// Trial-count override
    #[arg(long)]
    trials: Option<u64>,

    /// Unit system override
    #[arg(long, value_enum)]
    units: Option<UnitsArg>,

    /// Worker-thread count (parallelism hint; results are unaffected)
    #[arg(long, env = "SWAPDEC_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    Physical,
    Natural,
}

impl From<UnitsArg> for Units {
    fn from(u: UnitsArg) -> Units {
        match u {
            UnitsArg::Physical => Units::Physical,
            UnitsArg::Natural => Units::Natural,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(command: &Command) -> Result<(), Error> {
    let args = command.args();
    let text = fs::read_to_string(&args.config).map_err(|e| {
        Error::Config(format!("cannot read {}: {e}", args.config.display()))
    })?;
    let mut config = ExperimentConfig::from_json_str(&text)?;

    if config.experiment != command.kind() {
        return Err(Error::Validation(format!(
            "config declares experiment '{}' but the subcommand is '{}'",
            config.experiment,
            command.kind()
        )));
    }

    let seed_source = config.resolve(args.seed, args.units.map(Units::from));
    if seed_source == SeedSource::Defaulted {
        eprintln!("warning: no seed provided; defaulting to 0");
    }
    if let Some(trials) = args.trials {
        override_trials(&mut config, trials);
    }
    config.validate()?;

    let out_dir = args
        .out
        .clone()
        .or_else(|| {
            config
                .output
                .as_ref()
                .and_then(|o| o.dir.as_ref())
                .map(PathBuf::from)
        })
        .unwrap_or_else(|| PathBuf::from("results"));
    fs::create_dir_all(&out_dir)?;

    match args.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            pool.install(|| dispatch(&config, &out_dir))
        }
        None => dispatch(&config, &out_dir),
    }
}

fn override_trials(config: &mut ExperimentConfig, trials: u64) {
    match &mut config.params {
        ExperimentParams::Decay(p) => p.trials = trials,
        ExperimentParams::Zeno(p) => p.trials = trials,
        ExperimentParams::Lg(p) => p.trials_per_pair = trials,
        ExperimentParams::SwapTrace(_) | ExperimentParams::SieveCheck(_) => {}
    }
}

fn dispatch(config: &ExperimentConfig, out_dir: &Path) -> Result<(), Error> {
    match &config.params {
        ExperimentParams::Decay(params) => {
            let result = run_decoherence_experiment(params)?;
            let (fit, fit_rate_stderr) = if params.n >= 2 && params.m >= 3 {
                let fit = fit_decay(&result)?;
                let stderr = bootstrap_rate_stderr(&result, 1000, params.seed)?;
                (Some(fit), Some(stderr))
            } else {
                (None, None)
            };

            write_file(out_dir.join("decay.csv"), |w| write_decay_csv(w, &result))?;

            #[derive(Serialize)]
            struct DecayReport<'a> {
                decay: &'a swapdec::dynamics::DecayResult,
                fit: Option<DecayFit>,
                fit_rate_stderr: Option<f64>,
            }
            write_summary(
                out_dir,
                config,
                DecayReport {
                    decay: &result,
                    fit,
                    fit_rate_stderr,
                },
            )?;
            println!(
                "decay: {} cycles x {} trials, final fraction_pure {:.6} (analytic {:.6})",
                result.m,
                result.trials,
                result.cycles.last().map_or(1.0, |c| c.fraction_pure),
                result.cycles.last().map_or(1.0, |c| c.analytic_pure),
            );
            Ok(())
        }
        ExperimentParams::SwapTrace(params) => {
            let swap_config = SwapConfig {
                mode: params.mode,
                reference_bloch: params.reference_bloch,
                pointer_bloch: params.pointer_bloch,
            };
            let outcome = run_swap_sequence(&swap_config, &params.sequence)?;
            write_file(out_dir.join("swap.csv"), |w| {
                write_swap_csv(w, &outcome.trace)
            })?;

            #[derive(Serialize)]
            struct SwapReport<'a> {
                trace: &'a SwapTrace,
                roundtrip_fidelity: Option<f64>,
            }
            write_summary(
                out_dir,
                config,
                SwapReport {
                    trace: &outcome.trace,
                    roundtrip_fidelity: outcome.roundtrip_fidelity,
                },
            )?;
            println!(
                "swap-trace: {} steps, roundtrip fidelity {}",
                outcome.trace.steps.len(),
                outcome
                    .roundtrip_fidelity
                    .map_or("n/a".to_string(), |f| format!("{f:.12}")),
            );
            Ok(())
        }
        ExperimentParams::Zeno(params) => {
            let result = run_zeno(params)?;
            write_file(out_dir.join("zeno.csv"), |w| write_zeno_csv(w, &result))?;
            write_file(out_dir.join("tape.csv"), |w| {
                write_tape_csv(w, &result.first_trial_tape)
            })?;

            #[derive(Serialize)]
            struct ZenoReport {
                m: u32,
                trials: u64,
                seed: u64,
                evolution_angle: f64,
                constant_after_first_fraction: f64,
                initial_eigenvalue: Option<u8>,
                survival_fraction: Option<f64>,
                analytic_survival: Option<f64>,
            }
            write_summary(
                out_dir,
                config,
                ZenoReport {
                    m: result.m,
                    trials: result.trials,
                    seed: result.seed,
                    evolution_angle: result.evolution_angle,
                    constant_after_first_fraction: result.constant_after_first_fraction,
                    initial_eigenvalue: result.initial_eigenvalue,
                    survival_fraction: result.survival_fraction,
                    analytic_survival: result.analytic_survival,
                },
            )?;
            println!(
                "zeno: {} measurements x {} trials, constant-after-first {:.4}",
                result.m, result.trials, result.constant_after_first_fraction,
            );
            Ok(())
        }
        ExperimentParams::Lg(params) => {
            let thetas = params.thetas()?;
            let mut rows = Vec::with_capacity(thetas.len());
            let mut control_rows = Vec::new();
            for (idx, &theta) in thetas.iter().enumerate() {
                let omega = theta / params.tau as f64;
                let batches = generate_lg_trajectories(
                    omega,
                    params.tau,
                    params.trials_per_pair,
                    params.seed,
                    idx as u32,
                )?;
                let (c21, se21) = correlator_stats(&batches.pairs_21)?;
                let (c32, se32) = correlator_stats(&batches.pairs_32)?;
                let (c31, se31) = correlator_stats(&batches.pairs_31)?;
                rows.push(LgRow {
                    theta,
                    stats: lg_evaluate_with_errors(
                        c21,
                        c32,
                        c31,
                        [se21, se32, se31],
                        params.trials_per_pair,
                    ),
                });

                if params.include_control {
                    let triples = generate_lg_control(
                        omega,
                        params.tau,
                        params.trials_per_pair,
                        params.seed,
                        idx as u32,
                    )?;
                    let p21: Vec<(u8, u8)> = triples.iter().map(|&(a, b, _)| (a, b)).collect();
                    let p32: Vec<(u8, u8)> = triples.iter().map(|&(_, b, c)| (b, c)).collect();
                    let p31: Vec<(u8, u8)> = triples.iter().map(|&(a, _, c)| (a, c)).collect();
                    let (c21, se21) = correlator_stats(&p21)?;
                    let (c32, se32) = correlator_stats(&p32)?;
                    let (c31, se31) = correlator_stats(&p31)?;
                    control_rows.push(LgRow {
                        theta,
                        stats: lg_evaluate_with_errors(
                            c21,
                            c32,
                            c31,
                            [se21, se32, se31],
                            params.trials_per_pair,
                        ),
                    });
                }
            }

            write_file(out_dir.join("lg.csv"), |w| write_lg_csv(w, &rows))?;
            if params.include_control {
                write_file(out_dir.join("lg_control.csv"), |w| {
                    write_lg_csv(w, &control_rows)
                })?;
            }

            #[derive(Serialize)]
            struct LgReport<'a> {
                rows: &'a [LgRow],
                #[serde(skip_serializing_if = "Option::is_none")]
                control_rows: Option<&'a [LgRow]>,
            }
            write_summary(
                out_dir,
                config,
                LgReport {
                    rows: &rows,
                    control_rows: params.include_control.then_some(control_rows.as_slice()),
                },
            )?;
            for row in &rows {
                println!(
                    "lg: theta {:.6} -> K = {:.4} ({})",
                    row.theta,
                    row.stats.k_value,
                    if row.stats.violation { "violation" } else { "no violation" },
                );
            }
            Ok(())
        }
        ExperimentParams::SieveCheck(params) => {
            let violations = verify_predictability_sieve(&params.catalog);
            write_file(out_dir.join("sieve.csv"), |w| {
                use std::io::Write;
                writeln!(
                    w,
                    "first_id,second_id,first_kind,second_kind,commutator_norm"
                )?;
                for v in &violations {
                    writeln!(
                        w,
                        "{},{},{},{},{}",
                        v.first_id,
                        v.second_id,
                        v.first_kind,
                        v.second_kind,
                        swapdec::report::fmt_f64(v.commutator_norm)
                    )?;
                }
                Ok(())
            })?;

            #[derive(Serialize)]
            struct SieveReport<'a> {
                catalog_size: usize,
                violations: &'a [SieveViolation],
                pass: bool,
            }
            write_summary(
                out_dir,
                config,
                SieveReport {
                    catalog_size: params.catalog.len(),
                    violations: &violations,
                    pass: violations.is_empty(),
                },
            )?;
            println!(
                "sieve-check: {} observables, {} violating pair(s)",
                params.catalog.len(),
                violations.len(),
            );
            Ok(())
        }
    }
}

fn write_file<F>(path: PathBuf, write: F) -> Result<(), Error>
where
    F: FnOnce(&mut std::io::BufWriter<fs::File>) -> std::io::Result<()>,
{
    let file = fs::File::create(&path)?;
    let mut writer = std::io::BufWriter::new(file);
    write(&mut writer)?;
    use std::io::Write;
    writer.flush()?;
    Ok(())
}

fn write_summary<R: Serialize>(
    out_dir: &Path,
    config: &ExperimentConfig,
    results: R,
) -> Result<(), Error> {
    let summary = Summary {
        tool: ToolInfo::default(),
        config,
        results,
    };
    let json = to_json_17(&summary)?;
    fs::write(out_dir.join("summary.json"), json + "\n")?;
    Ok(())
}
