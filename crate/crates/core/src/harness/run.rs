use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkKind, Evaluator};
use crate::error::Result;
use crate::individual::{random_bitstring, Population};
use crate::metrics::{mei_opt, population_report, theory_bounds, MeiReport};
use crate::nsga2::nsga2_generation;
use crate::nsga3::{nsga3_generation, Nsga3Survival};
use crate::reference_points::ReferencePointSet;
use crate::rng::RandomSource;

use super::config::{Algorithm, ExperimentConfig, Horizon, StartRule};

/// Telemetry of one generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationRow {
    pub generation: u64,
    pub mei: u32,
    pub covers_0n: bool,
    pub covers_1n: bool,
    pub active_refpoints: usize,
    pub evaluations: u64,
}

impl GenerationRow {
    fn from_report(generation: u64, report: &MeiReport, evaluations: u64) -> Self {
        Self {
            generation,
            mei: report.mei,
            covers_0n: report.covers_zeros,
            covers_1n: report.covers_ones,
            active_refpoints: report.active_refpoints,
            evaluations,
        }
    }

    pub fn covers_both(&self) -> bool {
        self.covers_0n && self.covers_1n
    }
}

/// Everything recorded for one (config, seed) run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub seed: u64,
    pub rows: Vec<GenerationRow>,
    /// Start generation under the config's start rule; `None` if never reached.
    pub t_start: Option<u64>,
    pub monitor_violations: Vec<String>,
    /// Generations in which the population gave up its smallest or largest
    /// first-objective value.
    #[serde(default)]
    pub extreme_losses: u64,
}

impl RunRecord {
    pub fn last_generation(&self) -> u64 {
        self.rows.last().map_or(0, |r| r.generation)
    }

    /// Whether `0^n` or `1^n` was present at some generation and missing later.
    pub fn lost_covered_extremal(&self) -> bool {
        let (mut had0, mut had1) = (false, false);
        for r in &self.rows {
            if (had0 && !r.covers_0n) || (had1 && !r.covers_1n) {
                return true;
            }
            had0 |= r.covers_0n;
            had1 |= r.covers_1n;
        }
        false
    }

    pub fn lost_population_extreme(&self) -> bool {
        self.extreme_losses > 0
    }
}

fn f1_range(pop: &Population) -> (u32, u32) {
    pop.iter()
        .map(|x| x.f1())
        .fold((u32::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// First generation holding both extremals.
pub fn detect_t_start(rows: &[GenerationRow]) -> Option<u64> {
    rows.iter().find(|r| r.covers_both()).map(|r| r.generation)
}

/// First generation holding both extremals with `MEI = ceil(n / (N_r - 1))`.
pub fn detect_t_start_lotz(rows: &[GenerationRow], n: usize, ref_points: usize) -> Option<u64> {
    let target = n.div_ceil(ref_points.max(2) - 1) as u32;
    rows.iter()
        .find(|r| r.covers_both() && r.mei == target)
        .map(|r| r.generation)
}

/// First generation satisfying `rule`.
pub fn detect_start(rule: StartRule, rows: &[GenerationRow]) -> Option<u64> {
    match rule {
        StartRule::Extremals => detect_t_start(rows),
        StartRule::ExtremalsAndMei { target } => rows
            .iter()
            .find(|r| r.covers_both() && r.mei == target)
            .map(|r| r.generation),
    }
}

/// Online checks of the proven properties for NSGA-III on OneMinMax with
/// `N_r <= N`.
struct Monitors {
    enabled: bool,
    ref_points: usize,
    mei_upper: u64,
    mei_opt: u32,
    started: bool,
    last_active: usize,
    violations: Vec<String>,
}

impl Monitors {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let enabled = cfg.algorithm == Algorithm::Nsga3
            && cfg.benchmark.kind == BenchmarkKind::OneMinMax
            && cfg.refs_within_population();
        let (mei_upper, mei_opt) = if cfg.algorithm == Algorithm::Nsga3 {
            let b = theory_bounds(cfg.benchmark.n, cfg.pop_size, cfg.ref_points)?;
            (b.mei_upper, b.mei_opt)
        } else {
            (u64::MAX, mei_opt(cfg.pop_size, cfg.benchmark.n)?)
        };
        Ok(Self {
            enabled,
            ref_points: cfg.ref_points,
            mei_upper,
            mei_opt,
            started: false,
            last_active: 0,
            violations: Vec::new(),
        })
    }

    fn observe_range(&mut self, generation: u64, before: (u32, u32), after: (u32, u32)) {
        if self.enabled && (after.0 > before.0 || after.1 < before.1) {
            self.violations.push(format!(
                "generation {generation}: first-objective range shrank from [{}, {}] to [{}, {}]",
                before.0, before.1, after.0, after.1
            ));
        }
    }

    fn observe(&mut self, row: &GenerationRow) {
        if row.covers_both() && row.mei < self.mei_opt {
            self.violations.push(format!(
                "generation {}: MEI {} below the optimum {}",
                row.generation, row.mei, self.mei_opt
            ));
        }
        if !self.enabled {
            return;
        }
        if self.started {
            if !row.covers_both() {
                self.violations
                    .push(format!("generation {}: an extremal point was lost after the start", row.generation));
            }
            if row.active_refpoints < self.last_active {
                self.violations.push(format!(
                    "generation {}: active reference points fell from {} to {}",
                    row.generation, self.last_active, row.active_refpoints
                ));
            }
        }
        if row.covers_both() {
            self.started = true;
            if row.active_refpoints == self.ref_points && u64::from(row.mei) > self.mei_upper {
                self.violations.push(format!(
                    "generation {}: MEI {} above the bound {} with all reference points active",
                    row.generation, row.mei, self.mei_upper
                ));
            }
        }
        self.last_active = row.active_refpoints;
    }
}

enum Engine {
    Nsga3(Box<Nsga3Survival<f64>>),
    Nsga2(crate::nsga2::Nsga2Variant),
}

/// Execute one configuration under one seed.
pub fn run_single(cfg: &ExperimentConfig, seed: u64, horizon: Horizon) -> Result<RunRecord> {
    cfg.validate()?;
    let n = cfg.benchmark.n;
    let mut rng = RandomSource::new(seed);
    let mut evaluator = Evaluator::new(cfg.benchmark);
    let mut population: Population = (0..cfg.pop_size)
        .map(|_| evaluator.evaluate(random_bitstring(n, &mut rng)?))
        .collect::<Result<_>>()?;

    let mut engine = match cfg.algorithm.nsga2_variant() {
        None => Engine::Nsga3(Box::new(Nsga3Survival::new(
            ReferencePointSet::with_count(cfg.ref_points)?,
            cfg.nsga3,
        ))),
        Some(v) => Engine::Nsga2(v),
    };

    let initial = match &engine {
        Engine::Nsga3(s) => population_report(
            &population,
            n,
            s.refs(),
            s.state(),
            cfg.nsga3.tie_tolerance,
            &mut rng.fork(u64::MAX),
        )?,
        Engine::Nsga2(_) => MeiReport::from_population(&population, n, None)?,
    };
    let mut monitors = Monitors::new(cfg)?;
    let mut rows = vec![GenerationRow::from_report(0, &initial, evaluator.evaluations())];
    monitors.observe(&rows[0]);
    let mut t_start = detect_start(cfg.start_rule, &rows);

    let mut range = f1_range(&population);
    let mut extreme_losses = 0u64;
    let mut generation = 0u64;
    loop {
        let stop_at = match horizon {
            Horizon::Fixed { generations } => generations,
            Horizon::AfterStart { extra, cap } => match t_start {
                Some(t) => t + extra,
                None => cap,
            },
        };
        if generation >= stop_at {
            break;
        }
        generation += 1;
        let report = match &mut engine {
            Engine::Nsga3(survival) => {
                let out = nsga3_generation(&population, survival, &cfg.variation, &mut evaluator, &mut rng)?;
                let report = out.report;
                population = out.survival.population;
                report
            }
            Engine::Nsga2(variant) => {
                population = nsga2_generation(&population, *variant, &cfg.variation, &mut evaluator, &mut rng)?;
                MeiReport::from_population(&population, n, None)?
            }
        };
        let row = GenerationRow::from_report(generation, &report, evaluator.evaluations());
        let next = f1_range(&population);
        if next.0 > range.0 || next.1 < range.1 {
            extreme_losses += 1;
        }
        monitors.observe_range(generation, range, next);
        range = next;
        monitors.observe(&row);
        if t_start.is_none() {
            t_start = detect_start(cfg.start_rule, std::slice::from_ref(&row));
        }
        rows.push(row);
    }

    Ok(RunRecord {
        run_id: String::new(),
        seed,
        rows,
        t_start,
        monitor_violations: monitors.violations,
        extreme_losses,
    })
}
