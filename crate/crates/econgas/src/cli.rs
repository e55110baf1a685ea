//! Command-line front end: five subcommands over one shared flag set.
//!
//! Each run resolves its config (file, then `--set` overrides, then
//! `--seed`), executes, and writes artifacts plus a `run.manifest` into
//! `--out`. Errors leave on stderr as a single `error: <command>: ...`
//! line with a nonzero exit status.

use std::fmt;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analytics::{fit_exponential, fit_two_class, lorenz_closed_form, lorenz_empirical};
use crate::exchange::{detect_stationarity, run_replicas};
use crate::io::config::{
    resolve_analyze, resolve_market, resolve_maxent, resolve_simulate, resolve_theory,
    AnalyzeJob, FitKind, MarketJob, MaxentJob, RawConfig, SimulateJob, TheoryCurve, TheoryJob,
};
use crate::io::csvio::{
    ingest_sample, write_histogram, write_key_values, write_lorenz, write_maxent_table,
    write_overlay, write_snapshot, write_trace, write_wages, write_xy,
};
use crate::io::manifest::{sha256_hex, unix_now, RunManifest};
use crate::market::{sample_wages, solve_equilibrium};
use crate::maxent::solve_boltzmann;
use crate::money::Money;

#[derive(Debug, Parser)]
#[command(
    name = "econgas",
    version,
    about = "Kinetic money-exchange simulations, market equilibria, and inequality analytics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a money-exchange simulation; emits trace, snapshot, and histogram CSVs.
    Simulate(RunArgs),
    /// Fit distributions to a CSV sample; emits fit report, Lorenz curve, and overlay.
    Analyze(RunArgs),
    /// Solve the two-commodity labor market; emits the solution report.
    Market(RunArgs),
    /// Solve a constrained entropy maximization; emits the occupancy table.
    Maxent(RunArgs),
    /// Tabulate closed-form curves for plotting.
    Theory(RunArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Analyze(_) => "analyze",
            Command::Market(_) => "market",
            Command::Maxent(_) => "maxent",
            Command::Theory(_) => "theory",
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Flat `key = value` config file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Override one key, e.g. `--set sweeps=20000`; repeatable, wins over the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Shorthand for `--set seed=N`; wins over both.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,

    /// Directory for emitted artifacts.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
#[error("{command}: {message}")]
pub struct CliError {
    pub command: &'static str,
    pub message: String,
}

fn fail(command: &'static str, err: impl fmt::Display) -> CliError {
    CliError {
        command,
        message: err.to_string(),
    }
}

/// Report line to stdout. A broken pipe (`econgas ... | head`) is not an
/// error worth dying over: artifacts are already on disk, so the write
/// result is deliberately dropped.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

/// Parses argv and runs; the binary's whole `main` defers here.
pub fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let command = cli.command.name();
    match cli.command {
        Command::Simulate(args) => run_simulate(command, &args),
        Command::Analyze(args) => run_analyze(command, &args),
        Command::Market(args) => run_market(command, &args),
        Command::Maxent(args) => run_maxent(command, &args),
        Command::Theory(args) => run_theory(command, &args),
    }
}

fn load_config(command: &'static str, args: &RunArgs) -> Result<RawConfig, CliError> {
    let text = match &args.config {
        Some(path) => fs::read_to_string(path).map_err(|e| {
            fail(command, format!("cannot read config `{}`: {e}", path.display()))
        })?,
        None => String::new(),
    };
    let mut raw = RawConfig::parse(&text).map_err(|e| fail(command, e))?;
    for assignment in &args.set {
        raw.apply_set(assignment).map_err(|e| fail(command, e))?;
    }
    if let Some(seed) = args.seed {
        raw.set("seed", seed.to_string());
    }
    Ok(raw)
}

/// Collects emitted files and their digests for the manifest.
struct ArtifactSet<'a> {
    command: &'static str,
    dir: &'a Path,
    outputs: Vec<(String, String)>,
}

impl<'a> ArtifactSet<'a> {
    fn new(command: &'static str, dir: &'a Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| {
            fail(command, format!("cannot create `{}`: {e}", dir.display()))
        })?;
        Ok(Self {
            command,
            dir,
            outputs: Vec::new(),
        })
    }

    /// Renders an artifact in memory, writes it, and records its digest.
    fn write(
        &mut self,
        name: &str,
        emit: impl FnOnce(&mut Vec<u8>) -> io::Result<()>,
    ) -> Result<(), CliError> {
        let mut buf = Vec::new();
        emit(&mut buf).map_err(|e| fail(self.command, e))?;
        fs::write(self.dir.join(name), &buf)
            .map_err(|e| fail(self.command, format!("cannot write `{name}`: {e}")))?;
        self.outputs.push((name.to_string(), sha256_hex(&buf)));
        Ok(())
    }

    fn finish(
        self,
        seed: u64,
        started_unix: u64,
        config: Vec<(String, String)>,
    ) -> Result<(), CliError> {
        let manifest = RunManifest {
            command: self.command,
            seed,
            started_unix,
            finished_unix: unix_now(),
            config,
            outputs: self.outputs,
        };
        fs::write(self.dir.join("run.manifest"), manifest.render())
            .map_err(|e| fail(self.command, format!("cannot write `run.manifest`: {e}")))
    }
}

fn write_report(
    artifacts: &mut ArtifactSet<'_>,
    name: &str,
    lines: &[String],
) -> Result<(), CliError> {
    artifacts.write(name, |w| {
        for line in lines {
            writeln!(w, "{line}")?;
        }
        Ok(())
    })
}

fn run_simulate(command: &'static str, args: &RunArgs) -> Result<(), CliError> {
    let raw = load_config(command, args)?;
    let job: SimulateJob = resolve_simulate(&raw).map_err(|e| fail(command, e))?;
    let started = unix_now();
    let runs = run_replicas(&job.config, job.replicas).map_err(|e| fail(command, e))?;
    let (ledger, trace) = &runs[0];

    let mut artifacts = ArtifactSet::new(command, &args.out)?;
    artifacts.write("trace.csv", |w| write_trace(w, trace.records()))?;
    artifacts.write("snapshot.csv", |w| write_snapshot(w, ledger.balances()))?;
    let pooled: Vec<Money> = runs
        .iter()
        .flat_map(|(ledger, _)| ledger.balances().iter().copied())
        .collect();
    artifacts.write("histogram.csv", |w| {
        write_histogram(w, &pooled, job.histogram_bin)
    })?;
    artifacts.finish(job.config.seed, started, job.manifest_pairs())?;

    let last = trace.records().last().expect("trace has snapshots");
    say!(
        "simulate: {} agents, {} sweeps, {} replica(s), seed {}",
        job.config.agent_count, job.config.sweeps, job.replicas, job.config.seed
    );
    say!(
        "final sweep {}: mean {:.2}, entropy {:.4}, rejected {}",
        last.sweep, last.mean, last.entropy, last.rejections
    );
    match detect_stationarity(trace) {
        Ok(verdict) => say!("stationarity: {verdict}"),
        Err(err) => say!("stationarity: unavailable ({err})"),
    }
    say!(
        "wrote trace.csv, snapshot.csv, histogram.csv, run.manifest to {}",
        args.out.display()
    );
    Ok(())
}

fn run_analyze(command: &'static str, args: &RunArgs) -> Result<(), CliError> {
    let raw = load_config(command, args)?;
    let job: AnalyzeJob = resolve_analyze(&raw).map_err(|e| fail(command, e))?;
    let started = unix_now();
    let file = fs::File::open(&job.input).map_err(|e| {
        fail(command, format!("cannot open `{}`: {e}", job.input.display()))
    })?;
    let sample = ingest_sample(
        io::BufReader::new(file),
        &job.value_column,
        job.weight_column.as_deref(),
    )
    .map_err(|e| fail(command, e))?;
    // Lorenz curves are defined for nonnegative data only; a debt-run
    // snapshot still gets its fit, just no inequality outputs.
    let lorenz = if sample.values().iter().all(|&v| v >= 0.0) {
        Some(lorenz_empirical(&sample).map_err(|e| fail(command, e))?)
    } else {
        None
    };

    let mut report = Vec::new();
    let mut rows: Vec<(&str, String)> = Vec::new();
    let unit = sample.unit().to_string();
    let model_fraction;
    match job.fit {
        FitKind::Exponential => {
            let fit = fit_exponential(&sample, job.lower_bound).map_err(|e| fail(command, e))?;
            model_fraction = 0.0;
            report.push(format!(
                "exponential fit over {} values of `{unit}`",
                fit.sample_size
            ));
            report.push(format!(
                "temperature {:.4}, lower bound {:.4}, KS distance {:.4}",
                fit.temperature, fit.lower_bound, fit.ks_distance
            ));
            rows.push(("fit", "exponential".to_string()));
            rows.push(("sample_size", fit.sample_size.to_string()));
            rows.push(("temperature", fit.temperature.to_string()));
            rows.push(("lower_bound", fit.lower_bound.to_string()));
            rows.push(("ks_distance", fit.ks_distance.to_string()));
        }
        FitKind::TwoClass => {
            let fit = fit_two_class(&sample).map_err(|e| fail(command, e))?;
            model_fraction = fit.income_fraction.clamp(0.0, 1.0);
            report.push(format!(
                "two-class fit over {} values of `{unit}`",
                sample.values().len()
            ));
            report.push(format!(
                "bulk temperature {:.4}, Pareto exponent {:.4}, boundary {:.4}",
                fit.temperature, fit.pareto_exponent, fit.boundary
            ));
            report.push(format!(
                "upper class: {:.4} of the population holding {:.4} of income",
                fit.upper_population_share, fit.income_fraction
            ));
            report.push(format!(
                "KS distance {:.4} (bulk), {:.4} (tail)",
                fit.ks_bulk, fit.ks_tail
            ));
            rows.push(("fit", "two_class".to_string()));
            rows.push(("sample_size", sample.values().len().to_string()));
            rows.push(("temperature", fit.temperature.to_string()));
            rows.push(("pareto_exponent", fit.pareto_exponent.to_string()));
            rows.push(("boundary", fit.boundary.to_string()));
            rows.push((
                "upper_population_share",
                fit.upper_population_share.to_string(),
            ));
            rows.push(("income_fraction", fit.income_fraction.to_string()));
            rows.push(("mean", fit.mean.to_string()));
            rows.push(("ks_bulk", fit.ks_bulk.to_string()));
            rows.push(("ks_tail", fit.ks_tail.to_string()));
        }
    }
    match &lorenz {
        Some(lorenz) => {
            report.push(format!("Gini coefficient {:.4}", lorenz.gini));
            rows.push(("gini", lorenz.gini.to_string()));
        }
        None => report.push("Lorenz curve skipped: sample contains negative values".to_string()),
    }

    let mut artifacts = ArtifactSet::new(command, &args.out)?;
    artifacts.write("fit.csv", |w| write_key_values(w, &rows))?;
    write_report(&mut artifacts, "fit.txt", &report)?;
    let mut written = vec!["fit.csv", "fit.txt"];
    if let Some(lorenz) = &lorenz {
        let overlay: Vec<(f64, f64, f64)> = lorenz
            .points
            .iter()
            .map(|&(x, y)| (x, y, lorenz_closed_form(x, model_fraction)))
            .collect();
        artifacts.write("lorenz.csv", |w| write_lorenz(w, lorenz))?;
        artifacts.write("overlay.csv", |w| write_overlay(w, &overlay))?;
        written.push("lorenz.csv");
        written.push("overlay.csv");
    }
    artifacts.finish(job.seed, started, job.manifest_pairs())?;
    written.push("run.manifest");

    for line in &report {
        say!("{line}");
    }
    say!("wrote {} to {}", written.join(", "), args.out.display());
    Ok(())
}

fn run_market(command: &'static str, args: &RunArgs) -> Result<(), CliError> {
    let raw = load_config(command, args)?;
    let job: MarketJob = resolve_market(&raw).map_err(|e| fail(command, e))?;
    let started = unix_now();
    let solution = solve_equilibrium(&job.spec).map_err(|e| fail(command, e))?;

    let spec = &job.spec;
    let report = vec![
        format!(
            "labor market: {} workers, {} firms, capital {} per firm",
            spec.worker_count(),
            spec.firm_count(),
            spec.capital_per_firm()
        ),
        format!(
            "entropic prices: wage {:.6}, labor {:.6}",
            solution.prices.pi_wage(),
            solution.prices.pi_labor()
        ),
        format!(
            "employment: {:.2} employed, {:.2} unemployed ({:.2}%)",
            solution.employed_count,
            solution.unemployed_count,
            100.0 * solution.employed_count / spec.worker_count() as f64
        ),
        format!(
            "mean wage {:.4} = min wage {} + temperature {:.4}",
            solution.mean_wage,
            spec.min_wage(),
            solution.wage_temperature
        ),
        format!("mean labor per firm {:.4}", solution.mean_labor),
        format!(
            "clearing residuals: money {:.3e}, labor {:.3e}",
            solution.clearing_residuals[0], solution.clearing_residuals[1]
        ),
    ];
    let rows = vec![
        ("wage_price", solution.prices.pi_wage().to_string()),
        ("labor_price", solution.prices.pi_labor().to_string()),
        ("employed", solution.employed_count.to_string()),
        ("unemployed", solution.unemployed_count.to_string()),
        ("mean_wage", solution.mean_wage.to_string()),
        ("mean_labor", solution.mean_labor.to_string()),
        ("wage_temperature", solution.wage_temperature.to_string()),
        (
            "residual_money",
            solution.clearing_residuals[0].to_string(),
        ),
        (
            "residual_labor",
            solution.clearing_residuals[1].to_string(),
        ),
    ];

    let mut artifacts = ArtifactSet::new(command, &args.out)?;
    artifacts.write("market.csv", |w| write_key_values(w, &rows))?;
    write_report(&mut artifacts, "market.txt", &report)?;
    let mut written = "market.csv, market.txt".to_string();
    if job.wage_samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
        let wages = sample_wages(&solution, job.wage_samples as usize, &mut rng);
        artifacts.write("wages.csv", |w| write_wages(w, &wages))?;
        written.push_str(", wages.csv");
    }
    artifacts.finish(job.seed, started, job.manifest_pairs())?;

    for line in &report {
        say!("{line}");
    }
    say!("wrote {written}, run.manifest to {}", args.out.display());
    Ok(())
}

fn run_maxent(command: &'static str, args: &RunArgs) -> Result<(), CliError> {
    let raw = load_config(command, args)?;
    let job: MaxentJob = resolve_maxent(&raw).map_err(|e| fail(command, e))?;
    let started = unix_now();
    let solution = solve_boltzmann(&job.problem).map_err(|e| fail(command, e))?;

    let entropy: f64 = solution
        .probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    let report = vec![
        format!(
            "maxent: {} states, {} agents, total energy {}",
            job.problem.energies.len(),
            job.problem.total_count,
            job.problem.total_energy
        ),
        format!(
            "beta {:.6}, temperature {:.6}",
            solution.beta, solution.temperature
        ),
        format!(
            "alpha {:.6}, chemical potential {:.6}",
            solution.alpha, solution.chemical_potential
        ),
        format!("per-agent entropy {entropy:.6}"),
    ];

    let mut artifacts = ArtifactSet::new(command, &args.out)?;
    artifacts.write("maxent.csv", |w| {
        write_maxent_table(w, &job.problem, &solution)
    })?;
    write_report(&mut artifacts, "maxent.txt", &report)?;
    artifacts.finish(job.seed, started, job.manifest_pairs())?;

    for line in &report {
        say!("{line}");
    }
    say!(
        "wrote maxent.csv, maxent.txt, run.manifest to {}",
        args.out.display()
    );
    Ok(())
}

/// Grid 0, step, 2 step, ... capped below 1, then exactly 1.
fn unit_grid(step: f64) -> Vec<f64> {
    let interior = (1.0 / step - 1e-9).ceil() as usize;
    let mut grid: Vec<f64> = (0..interior).map(|i| i as f64 * step).collect();
    grid.push(1.0);
    grid
}

fn run_theory(command: &'static str, args: &RunArgs) -> Result<(), CliError> {
    let raw = load_config(command, args)?;
    let job: TheoryJob = resolve_theory(&raw).map_err(|e| fail(command, e))?;
    let started = unix_now();

    let (header, rows): ((&str, &str), Vec<(f64, f64)>) = match job.curve {
        TheoryCurve::Lorenz => (
            ("x", "y"),
            unit_grid(job.x_step)
                .into_iter()
                .map(|x| (x, lorenz_closed_form(x, job.fraction)))
                .collect(),
        ),
        TheoryCurve::Gini => (
            ("f", "gini"),
            unit_grid(job.x_step)
                .into_iter()
                .map(|f| (f, crate::analytics::gini_two_class(f)))
                .collect(),
        ),
        TheoryCurve::IncomeDensity => {
            let steps = (job.r_max / job.r_step + 1e-9).floor() as usize;
            (
                ("r", "density"),
                (0..=steps)
                    .map(|i| {
                        let r = i as f64 * job.r_step;
                        (r, crate::analytics::family_income_density(r, job.temperature))
                    })
                    .collect(),
            )
        }
    };

    let mut artifacts = ArtifactSet::new(command, &args.out)?;
    let row_count = rows.len();
    artifacts.write("theory.csv", |w| write_xy(w, header, rows.iter().copied()))?;
    artifacts.finish(job.seed, started, job.manifest_pairs())?;

    say!(
        "theory: wrote {row_count} {} rows to theory.csv in {}",
        job.curve.name(),
        args.out.display()
    );
    Ok(())
}
