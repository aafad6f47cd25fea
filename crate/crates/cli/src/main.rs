use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nsga3_core::harness::{
    experiment_matrix, run_experiment, run_single, write_outputs, write_run_csv, Algorithm, ExperimentConfig,
    ExperimentSummary, Horizon, Overrides, TableKind,
};
use nsga3_core::lemma_lab::validate_lemma;
use nsga3_core::nsga3::RhoPositivePolicy;
use nsga3_core::{theory_bounds, Benchmark, BenchmarkKind, Error};

#[derive(Parser)]
#[command(name = "nsga3", version, about = "NSGA-III approximation experiments on OneMinMax and LOTZ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration under one seed.
    Run(RunArgs),
    /// Run a table of configurations and write CSV and JSON results.
    Experiment(ExperimentArgs),
    /// Monte Carlo and property checks of the selection lemmas.
    Validate(ValidateArgs),
    /// Print the closed-form MEI bounds.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "oneminmax")]
    benchmark: BenchmarkKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    pop_size: usize,
    #[arg(long)]
    ref_points: Option<usize>,
    #[arg(long, default_value = "nsga3")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed number of generations; otherwise run 100 generations past the start.
    #[arg(long)]
    generations: Option<u64>,
    /// Candidate choice for reference points that already have a survivor.
    #[arg(long)]
    niching: Option<RhoPositivePolicy>,
    /// Write the per-generation CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    table: TableKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pop_size: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    ref_points: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    algorithm: Option<Vec<Algorithm>>,
    /// Number of runs per configuration.
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    master_seed: Option<u64>,
    /// Hard cap on generations per run.
    #[arg(long)]
    generations: Option<u64>,
    #[arg(long)]
    niching: Option<RhoPositivePolicy>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=10))]
    lemma: u8,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    pop_size: usize,
    #[arg(long)]
    ref_points: usize,
}

enum Failure {
    Error(Error),
    Monitor(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"))
}

fn print_summary(summary: &ExperimentSummary) {
    for row in &summary.rows {
        let cells: Vec<String> = row
            .windows
            .iter()
            .map(|w| match w.quartiles {
                Some(q) => format!("{} ({},{},{})", w.window, q.q1, q.q2, q.q3),
                None => format!("{} n/a", w.window),
            })
            .collect();
        println!("{:<24} {}", row.label, cells.join("  "));
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Run(a) => {
            let benchmark = Benchmark::new(a.benchmark, a.n)?;
            let mut cfg =
                ExperimentConfig::new(benchmark, a.pop_size, a.ref_points.unwrap_or(a.pop_size), a.algorithm, vec![a.seed]);
            if let Some(p) = a.niching {
                cfg.nsga3.niching_rho_positive = p;
            }
            let horizon = match a.generations {
                Some(generations) => Horizon::Fixed { generations },
                None => Horizon::AfterStart {
                    extra: cfg.window_end(),
                    cap: cfg.max_generations,
                },
            };
            let mut record = run_single(&cfg, a.seed, horizon)?;
            record.run_id = format!("{}/{}", cfg.label, a.seed);
            if let Some(path) = &a.out {
                write_run_csv(path, &record)?;
            }
            let last = record.rows.last().map(|r| r.mei);
            println!(
                "{}",
                json(&serde_json::json!({
                    "label": cfg.label,
                    "seed": a.seed,
                    "t_start": record.t_start,
                    "generations": record.last_generation(),
                    "final_mei": last,
                    "monitor_violations": record.monitor_violations,
                }))
            );
            if let Some(v) = record.monitor_violations.first() {
                return Err(Failure::Monitor(v.clone()));
            }
            Ok(())
        }
        Command::Experiment(a) => {
            let overrides = Overrides {
                n: a.n,
                pop_sizes: a.pop_size,
                ref_points: a.ref_points,
                algorithms: a.algorithm,
                seeds: a.seeds,
                master_seed: a.master_seed,
                generations: a.generations,
                niching: a.niching,
            };
            let plan = experiment_matrix(a.table, &overrides)?;
            let outcome = run_experiment(&plan)?;
            write_outputs(&a.out, &plan, &outcome)?;
            print_summary(&outcome.summary);
            match outcome.summary.monitor_violations() {
                0 => Ok(()),
                k => Err(Failure::Monitor(format!("{k} monitor violations, see {}", a.out.display()))),
            }
        }
        Command::Validate(a) => {
            let report = validate_lemma(a.lemma, a.trials, a.seed)?;
            println!("{}", json(&report));
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Monitor(format!("lemma {}: {} violations", report.lemma, report.violations)))
            }
        }
        Command::Bounds(a) => {
            println!("{}", json(&theory_bounds(a.n, a.pop_size, a.ref_points)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Monitor(msg)) => {
            eprintln!("monitor violation: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io { .. } | Error::Csv { .. } | Error::Json { .. } => 3,
                Error::Monitor(_) => 2,
                _ => 1,
            })
        }
    }
}
