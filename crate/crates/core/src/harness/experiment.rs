use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::Benchmark;
use crate::error::{Error, Result};
use crate::nsga3::RhoPositivePolicy;
use crate::rng::derive_seeds;

use super::aggregate::{aggregate_quartiles, resolve_t_max, ConfigSummary};
use super::config::{default_label, Algorithm, ExperimentConfig, Horizon, Window};
use super::io::{read_json, read_run_csv, run_csv_path, write_json, write_run_csv};
use super::run::{detect_start, run_single, RunRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Table1,
    Table2,
    Custom,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Table1 => "table1",
            TableKind::Table2 => "table2",
            TableKind::Custom => "custom",
        })
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "table1" => Ok(TableKind::Table1),
            "2" | "table2" => Ok(TableKind::Table2),
            "custom" => Ok(TableKind::Custom),
            other => Err(Error::invalid(format!("unknown table {other:?}"))),
        }
    }
}

pub const RUNS_PER_CONFIG: usize = 20;
pub const DEFAULT_MASTER_SEED: u64 = 2024;
pub const TABLE1_N: usize = 601;
pub const TABLE1_POP_SIZES: [usize; 3] = [301, 151, 76];
pub const TABLE2_N: usize = 120;
pub const TABLE2_POP_SIZES: [usize; 3] = [61, 31, 16];
/// Generation cap while waiting for the LOTZ start condition.
pub const TABLE2_MAX_GENERATIONS: u64 = 2_000_000;

/// `ceil(N/4), ceil(N/2), N, 2N, 4N, 8N`.
pub fn ref_point_settings(pop_size: usize) -> [usize; 6] {
    let n = pop_size;
    [n.div_ceil(4), n.div_ceil(2), n, 2 * n, 4 * n, 8 * n]
}

/// Optional changes to a table's defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overrides {
    pub n: Option<usize>,
    pub pop_sizes: Option<Vec<usize>>,
    pub ref_points: Option<Vec<usize>>,
    pub algorithms: Option<Vec<Algorithm>>,
    pub seeds: Option<usize>,
    pub master_seed: Option<u64>,
    /// Hard cap on generations.
    pub generations: Option<u64>,
    pub niching: Option<RhoPositivePolicy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub table: TableKind,
    pub master_seed: u64,
    pub configs: Vec<ExperimentConfig>,
}

fn plan_label(pop_size: usize, algorithm: Algorithm, ref_points: usize) -> String {
    format!("N{pop_size}-{}", default_label(algorithm, ref_points))
}

/// Build the configuration matrix of a table.
pub fn experiment_matrix(table: TableKind, overrides: &Overrides) -> Result<ExperimentPlan> {
    let (benchmark, pops, windows, algorithms) = match table {
        TableKind::Table1 => (
            Benchmark::one_min_max(overrides.n.unwrap_or(TABLE1_N))?,
            TABLE1_POP_SIZES.to_vec(),
            vec![Window::new(1, 100)?, Window::new(3001, 3100)?],
            vec![Algorithm::Nsga3, Algorithm::Nsga2Sequential],
        ),
        TableKind::Table2 => (
            Benchmark::lotz(overrides.n.unwrap_or(TABLE2_N))?,
            TABLE2_POP_SIZES.to_vec(),
            vec![Window::new(1, 1000)?],
            vec![Algorithm::Nsga3],
        ),
        TableKind::Custom => {
            let n = overrides.n.ok_or_else(|| Error::Config("custom tables need a problem size".into()))?;
            let pops = overrides
                .pop_sizes
                .clone()
                .ok_or_else(|| Error::Config("custom tables need population sizes".into()))?;
            (Benchmark::one_min_max(n)?, pops, vec![Window::new(1, 100)?], vec![Algorithm::Nsga3])
        }
    };
    let pops = overrides.pop_sizes.clone().unwrap_or(pops);
    let algorithms = overrides.algorithms.clone().unwrap_or(algorithms);
    let master_seed = overrides.master_seed.unwrap_or(DEFAULT_MASTER_SEED);
    let niching = overrides.niching.unwrap_or(match table {
        TableKind::Table1 | TableKind::Table2 => RhoPositivePolicy::Random,
        TableKind::Custom => RhoPositivePolicy::Closest,
    });
    let seeds = derive_seeds(master_seed, overrides.seeds.unwrap_or(RUNS_PER_CONFIG));

    let mut configs = Vec::new();
    for &pop in &pops {
        for &alg in &algorithms {
            let settings = match alg {
                Algorithm::Nsga3 => overrides.ref_points.clone().unwrap_or_else(|| ref_point_settings(pop).to_vec()),
                _ => vec![0],
            };
            for nr in settings {
                let mut cfg = ExperimentConfig::new(benchmark, pop, nr, alg, seeds.clone());
                cfg.label = plan_label(pop, alg, nr);
                cfg.windows = windows.clone();
                if table == TableKind::Table2 {
                    cfg.max_generations = TABLE2_MAX_GENERATIONS;
                }
                if let Some(g) = overrides.generations {
                    cfg.max_generations = g;
                }
                cfg.nsga3.niching_rho_positive = niching;
                cfg.validate()?;
                configs.push(cfg);
            }
        }
    }
    let mut labels: Vec<&str> = configs.iter().map(|c| c.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != configs.len() {
        return Err(Error::Config("duplicate configurations in the matrix".into()));
    }
    Ok(ExperimentPlan {
        table,
        master_seed,
        configs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TMaxEntry {
    pub pop_size: usize,
    pub t_max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub table: TableKind,
    pub master_seed: u64,
    pub t_max: Vec<TMaxEntry>,
    pub rows: Vec<ConfigSummary>,
}

impl ExperimentSummary {
    pub fn row(&self, label: &str) -> Option<&ConfigSummary> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn monitor_violations(&self) -> usize {
        self.rows.iter().map(|r| r.monitor_violations).sum()
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub summary: ExperimentSummary,
    /// Records per configuration, in plan order.
    pub records: Vec<Vec<RunRecord>>,
}

impl ExperimentOutcome {
    pub fn records_for(&self, label: &str) -> Option<&[RunRecord]> {
        self.summary
            .rows
            .iter()
            .position(|r| r.label == label)
            .map(|i| self.records[i].as_slice())
    }
}

fn run_configs(plan: &ExperimentPlan, picks: &[usize], horizon: impl Fn(&ExperimentConfig) -> Horizon + Sync) -> Result<Vec<(usize, Vec<RunRecord>)>> {
    let jobs: Vec<(usize, u64)> = picks
        .iter()
        .flat_map(|&i| plan.configs[i].seeds.iter().map(move |&s| (i, s)))
        .collect();
    let done: Vec<(usize, RunRecord)> = jobs
        .par_iter()
        .map(|&(i, seed)| {
            let cfg = &plan.configs[i];
            let mut rec = run_single(cfg, seed, horizon(cfg))?;
            rec.run_id = format!("{}/{seed}", cfg.label);
            Ok((i, rec))
        })
        .collect::<Result<_>>()?;
    Ok(picks
        .iter()
        .map(|&i| (i, done.iter().filter(|(j, _)| *j == i).map(|(_, r)| r.clone()).collect()))
        .collect())
}

fn t_max_for(plan: &ExperimentPlan, records: &[Option<Vec<RunRecord>>], pop_size: usize) -> Result<Option<u64>> {
    let group: Vec<&RunRecord> = plan
        .configs
        .iter()
        .zip(records)
        .filter(|(c, _)| c.pop_size == pop_size && c.algorithm == Algorithm::Nsga3 && c.refs_within_population())
        .filter_map(|(_, r)| r.as_ref())
        .flatten()
        .collect();
    if group.is_empty() {
        return Ok(None);
    }
    resolve_t_max(group).map(Some)
}

fn summarize(plan: &ExperimentPlan, records: &[Vec<RunRecord>]) -> Result<ExperimentSummary> {
    let wrapped: Vec<Option<Vec<RunRecord>>> = records.iter().cloned().map(Some).collect();
    let mut pops: Vec<usize> = plan.configs.iter().map(|c| c.pop_size).collect();
    pops.dedup();
    let mut t_max = Vec::new();
    for &p in &pops {
        t_max.push(TMaxEntry {
            pop_size: p,
            t_max: t_max_for(plan, &wrapped, p)?,
        });
    }
    let rows = plan
        .configs
        .iter()
        .zip(records)
        .map(|(cfg, recs)| {
            let tm = t_max.iter().find(|e| e.pop_size == cfg.pop_size).and_then(|e| e.t_max);
            aggregate_quartiles(cfg, recs, tm)
        })
        .collect::<Result<_>>()?;
    Ok(ExperimentSummary {
        table: plan.table,
        master_seed: plan.master_seed,
        t_max,
        rows,
    })
}

/// Run every configuration of the plan. Configurations whose start is
/// detected run until `window_end` generations past it; those with more
/// reference points than individuals run to `T_max + window_end`.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentOutcome> {
    let (direct, deferred): (Vec<usize>, Vec<usize>) =
        (0..plan.configs.len()).partition(|&i| !plan.configs[i].uses_t_max());
    let mut records: Vec<Option<Vec<RunRecord>>> = vec![None; plan.configs.len()];
    for (i, recs) in run_configs(plan, &direct, |c| Horizon::AfterStart {
        extra: c.window_end(),
        cap: c.max_generations,
    })? {
        records[i] = Some(recs);
    }

    let mut limits = Vec::new();
    for &i in &deferred {
        let cfg = &plan.configs[i];
        let t_max = t_max_for(plan, &records, cfg.pop_size)?.ok_or_else(|| {
            Error::Config(format!("{}: no configuration with N_r <= N to take T_max from", cfg.label))
        })?;
        limits.push((cfg.label.clone(), (t_max + cfg.window_end()).min(cfg.max_generations)));
    }
    for (i, recs) in run_configs(plan, &deferred, |c| {
        let generations = limits.iter().find(|(l, _)| *l == c.label).map_or(0, |(_, g)| *g);
        Horizon::Fixed { generations }
    })? {
        records[i] = Some(recs);
    }

    let records: Vec<Vec<RunRecord>> = records.into_iter().map(Option::unwrap_or_default).collect();
    let summary = summarize(plan, &records)?;
    Ok(ExperimentOutcome { summary, records })
}

/// Write `config.json`, `summary.json` and one CSV per run under `out`.
pub fn write_outputs(out: &Path, plan: &ExperimentPlan, outcome: &ExperimentOutcome) -> Result<()> {
    write_json(&out.join("config.json"), plan)?;
    write_json(&out.join("summary.json"), &outcome.summary)?;
    for (cfg, recs) in plan.configs.iter().zip(&outcome.records) {
        for r in recs {
            write_run_csv(&run_csv_path(out, &cfg.label, r.seed), r)?;
        }
    }
    Ok(())
}

/// Rebuild the summary of an output directory from `config.json` and the
/// per-run CSV files alone.
pub fn reaggregate(out: &Path) -> Result<ExperimentSummary> {
    let plan: ExperimentPlan = read_json(&out.join("config.json"))?;
    let mut records = Vec::with_capacity(plan.configs.len());
    for cfg in &plan.configs {
        let mut recs = Vec::with_capacity(cfg.seeds.len());
        for &seed in &cfg.seeds {
            let mut r = read_run_csv(&run_csv_path(out, &cfg.label, seed))?;
            r.t_start = detect_start(cfg.start_rule, &r.rows);
            recs.push(r);
        }
        records.push(recs);
    }
    let mut summary = summarize(&plan, &records)?;
    // The CSV files carry neither monitor results nor range losses.
    let original: Option<ExperimentSummary> = read_json(&out.join("summary.json")).ok();
    if let Some(orig) = original {
        for (row, o) in summary.rows.iter_mut().zip(&orig.rows) {
            row.monitor_violations = o.monitor_violations;
            row.runs_losing_population_extreme = o.runs_losing_population_extreme;
        }
    }
    Ok(summary)
}
