use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::benchmarks::{Benchmark, BenchmarkKind};
use crate::error::{Error, Result};
use crate::nsga2::Nsga2Variant;
use crate::nsga3::Nsga3Config;
use crate::variation::VariationConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Nsga3,
    Nsga2Classic,
    Nsga2Sequential,
    Nsga2Steady,
}

impl Algorithm {
    pub fn nsga2_variant(self) -> Option<Nsga2Variant> {
        match self {
            Algorithm::Nsga3 => None,
            Algorithm::Nsga2Classic => Some(Nsga2Variant::Classic),
            Algorithm::Nsga2Sequential => Some(Nsga2Variant::Sequential),
            Algorithm::Nsga2Steady => Some(Nsga2Variant::SteadyState),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Nsga2Classic => "nsga2-classic",
            Algorithm::Nsga2Sequential => "nsga2-sequential",
            Algorithm::Nsga2Steady => "nsga2-steady",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "nsga3" | "nsga-iii" => Ok(Algorithm::Nsga3),
            "nsga2-classic" | "nsga2" => Ok(Algorithm::Nsga2Classic),
            "nsga2-sequential" | "nsga2'" => Ok(Algorithm::Nsga2Sequential),
            "nsga2-steady" | "nsga2-steady-state" => Ok(Algorithm::Nsga2Steady),
            other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// How `T_start` is detected for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum StartRule {
    /// First generation holding both `0^n` and `1^n`.
    Extremals,
    /// Both extremals and `MEI = ceil(n / (N_r - 1))`.
    ExtremalsAndMei { target: u32 },
}

impl StartRule {
    pub fn lotz(n: usize, ref_points: usize) -> Self {
        StartRule::ExtremalsAndMei {
            target: n.div_ceil(ref_points.max(2) - 1) as u32,
        }
    }
}

/// Measurement window relative to `T_start`: generations `T_start + from ..= T_start + to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub from: u64,
    pub to: u64,
}

impl Window {
    pub fn new(from: u64, to: u64) -> Result<Self> {
        if from > to {
            return Err(Error::invalid(format!("empty window [{from}..{to}]")));
        }
        Ok(Self { from, to })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.from, self.to)
    }
}

/// When a run stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Horizon {
    /// Exactly this many generations after the initial population.
    Fixed { generations: u64 },
    /// `extra` generations past the detected start, giving up at `cap`.
    AfterStart { extra: u64, cap: u64 },
}

/// One configuration of the experiment matrix, run once per seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub label: String,
    pub benchmark: Benchmark,
    pub pop_size: usize,
    pub ref_points: usize,
    pub algorithm: Algorithm,
    pub seeds: Vec<u64>,
    /// Hard cap on generations spent waiting for `T_start`.
    pub max_generations: u64,
    pub windows: Vec<Window>,
    pub start_rule: StartRule,
    pub variation: VariationConfig,
    pub nsga3: Nsga3Config,
}

impl ExperimentConfig {
    pub fn new(
        benchmark: Benchmark,
        pop_size: usize,
        ref_points: usize,
        algorithm: Algorithm,
        seeds: Vec<u64>,
    ) -> Self {
        let start_rule = match benchmark.kind {
            BenchmarkKind::OneMinMax => StartRule::Extremals,
            BenchmarkKind::Lotz => StartRule::lotz(benchmark.n, ref_points),
        };
        Self {
            label: default_label(algorithm, ref_points),
            benchmark,
            pop_size,
            ref_points,
            algorithm,
            seeds,
            max_generations: 100_000,
            windows: vec![Window { from: 1, to: 100 }],
            start_rule,
            variation: VariationConfig::default(),
            nsga3: Nsga3Config::default(),
        }
    }

    /// Reference points do not outnumber the population (the regime with
    /// proven guarantees and directly detected starts).
    pub fn refs_within_population(&self) -> bool {
        self.ref_points <= self.pop_size
    }

    /// NSGA-III with more reference points than individuals; its start falls
    /// back to `T_max`.
    pub fn uses_t_max(&self) -> bool {
        self.algorithm == Algorithm::Nsga3 && !self.refs_within_population()
    }

    pub fn window_end(&self) -> u64 {
        self.windows.iter().map(|w| w.to).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.benchmark.n;
        if n < 2 {
            return Err(Error::Config(format!("problem size {n} below 2")));
        }
        if self.pop_size < 2 || self.pop_size >= n + 1 {
            return Err(Error::Config(format!(
                "population size {} must satisfy 2 <= N < n + 1 = {}",
                self.pop_size,
                n + 1
            )));
        }
        if self.algorithm == Algorithm::Nsga3 && self.ref_points < 2 {
            return Err(Error::Config(format!("need at least 2 reference points, got {}", self.ref_points)));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("no seeds".into()));
        }
        let mut s = self.seeds.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != self.seeds.len() {
            return Err(Error::Config("seeds must be pairwise distinct".into()));
        }
        if self.label.is_empty() || self.label.contains(['/', '\\', ',']) {
            return Err(Error::Config(format!("unusable label {:?}", self.label)));
        }
        self.variation.validate(n)
    }
}

pub fn default_label(algorithm: Algorithm, ref_points: usize) -> String {
    match algorithm {
        Algorithm::Nsga3 => format!("nsga3-nr{ref_points}"),
        other => other.name().to_string(),
    }
}
