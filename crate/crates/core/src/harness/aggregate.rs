use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::theory_bounds;

use super::config::{Algorithm, ExperimentConfig, Window};
use super::run::RunRecord;

/// Quartiles of a pooled sample, linear interpolation between order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuartileSummary {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub samples: usize,
}

/// Quantile `q` of an ascending sample: `x[h] + (h - floor h)(x[h+1] - x[h])`
/// with `h = (len - 1) q`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() || !(0.0..=1.0).contains(&q) {
        return None;
    }
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    Some(sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]))
}

pub fn quartiles(values: &[u32]) -> Option<QuartileSummary> {
    let mut sorted: Vec<f64> = values.iter().map(|&v| f64::from(v)).collect();
    sorted.sort_by(f64::total_cmp);
    Some(QuartileSummary {
        q1: quantile_sorted(&sorted, 0.25)?,
        q2: quantile_sorted(&sorted, 0.5)?,
        q3: quantile_sorted(&sorted, 0.75)?,
        samples: sorted.len(),
    })
}

/// Largest detected start among the given runs, which must all have one.
pub fn resolve_t_max<'a>(records: impl IntoIterator<Item = &'a RunRecord>) -> Result<u64> {
    let mut best: Option<u64> = None;
    for r in records {
        let t = r.t_start.ok_or_else(|| {
            Error::Config(format!("run {} (seed {}) never reached its start condition", r.run_id, r.seed))
        })?;
        best = best.max(Some(t));
    }
    best.ok_or_else(|| Error::Config("no runs with at most as many reference points as individuals".into()))
}

/// Start used for windowing: the detected one, except that configurations with
/// more reference points than individuals are capped at `t_max`.
pub fn resolve_start(cfg: &ExperimentConfig, record: &RunRecord, t_max: Option<u64>) -> Option<u64> {
    if cfg.uses_t_max() {
        match (record.t_start, t_max) {
            (Some(t), Some(m)) => Some(t.min(m)),
            (None, m) => m,
            (t, None) => t,
        }
    } else {
        record.t_start
    }
}

/// MEI values of generations `start + from ..= start + to`.
pub fn window_samples(record: &RunRecord, start: u64, window: Window) -> Result<Vec<u32>> {
    let first = record.rows.first().map_or(0, |r| r.generation);
    let lo = start + window.from;
    let hi = start + window.to;
    if lo < first || hi > record.last_generation() {
        return Err(Error::invalid(format!(
            "run {} (seed {}) lacks generations {lo}..={hi}",
            record.run_id, record.seed
        )));
    }
    Ok(record
        .rows
        .iter()
        .filter(|r| (lo..=hi).contains(&r.generation))
        .map(|r| r.mei)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSummary {
    pub window: Window,
    pub quartiles: Option<QuartileSummary>,
    pub runs_used: usize,
    pub runs_missing: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub label: String,
    pub algorithm: Algorithm,
    pub benchmark: String,
    pub n: usize,
    pub pop_size: usize,
    pub ref_points: usize,
    pub mei_opt: u32,
    pub mei_upper: Option<u64>,
    pub seeds: Vec<u64>,
    pub t_start: Vec<Option<u64>>,
    pub resolved_start: Vec<Option<u64>>,
    pub windows: Vec<WindowSummary>,
    pub monitor_violations: usize,
    /// Runs in which `0^n` or `1^n` disappeared after being present.
    pub runs_losing_extremal: usize,
    /// Runs in which the population lost its smallest or largest `f_1` value.
    #[serde(default)]
    pub runs_losing_population_extreme: usize,
}

impl ConfigSummary {
    pub fn window(&self, window: Window) -> Option<&WindowSummary> {
        self.windows.iter().find(|w| w.window == window)
    }
}

/// Pool every run's window samples per window and summarize.
pub fn aggregate_quartiles(cfg: &ExperimentConfig, records: &[RunRecord], t_max: Option<u64>) -> Result<ConfigSummary> {
    let n = cfg.benchmark.n;
    let (mei_opt, mei_upper) = match cfg.algorithm {
        Algorithm::Nsga3 => {
            let b = theory_bounds(n, cfg.pop_size, cfg.ref_points)?;
            (b.mei_opt, Some(b.mei_upper))
        }
        _ => (crate::metrics::mei_opt(cfg.pop_size, n)?, None),
    };
    let starts: Vec<Option<u64>> = records.iter().map(|r| resolve_start(cfg, r, t_max)).collect();
    let mut windows = Vec::with_capacity(cfg.windows.len());
    for &window in &cfg.windows {
        let mut pooled = Vec::new();
        let (mut used, mut missing) = (0, 0);
        for (record, start) in records.iter().zip(&starts) {
            match start.map(|s| window_samples(record, s, window)) {
                Some(Ok(samples)) => {
                    pooled.extend(samples);
                    used += 1;
                }
                _ => missing += 1,
            }
        }
        windows.push(WindowSummary {
            window,
            quartiles: quartiles(&pooled),
            runs_used: used,
            runs_missing: missing,
        });
    }
    Ok(ConfigSummary {
        label: cfg.label.clone(),
        algorithm: cfg.algorithm,
        benchmark: cfg.benchmark.kind.to_string(),
        n,
        pop_size: cfg.pop_size,
        ref_points: cfg.ref_points,
        mei_opt,
        mei_upper,
        seeds: records.iter().map(|r| r.seed).collect(),
        t_start: records.iter().map(|r| r.t_start).collect(),
        resolved_start: starts,
        windows,
        monitor_violations: records.iter().map(|r| r.monitor_violations.len()).sum(),
        runs_losing_extremal: records.iter().filter(|r| r.lost_covered_extremal()).count(),
        runs_losing_population_extreme: records.iter().filter(|r| r.lost_population_extreme()).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::Benchmark;
    use crate::harness::run::GenerationRow;

    #[test]
    fn linear_quantiles() {
        let q = quartiles(&[1, 2, 3, 4]).unwrap();
        assert_eq!((q.q1, q.q2, q.q3), (1.75, 2.5, 3.25));
        let q = quartiles(&[7]).unwrap();
        assert_eq!((q.q1, q.q2, q.q3), (7.0, 7.0, 7.0));
        let q = quartiles(&[5, 1, 3, 2, 4]).unwrap();
        assert_eq!((q.q1, q.q2, q.q3), (2.0, 3.0, 4.0));
        assert!(quartiles(&[]).is_none());
    }

    fn record(seed: u64, t_start: Option<u64>, meis: &[u32]) -> RunRecord {
        RunRecord {
            run_id: format!("r{seed}"),
            seed,
            rows: meis
                .iter()
                .enumerate()
                .map(|(g, &mei)| GenerationRow {
                    generation: g as u64,
                    mei,
                    covers_0n: true,
                    covers_1n: true,
                    active_refpoints: 0,
                    evaluations: 0,
                })
                .collect(),
            t_start,
            monitor_violations: vec![],
            extreme_losses: 0,
        }
    }

    #[test]
    fn windows_are_relative_to_start() {
        let r = record(1, Some(2), &[10, 11, 12, 13, 14, 15]);
        assert_eq!(window_samples(&r, 2, Window::new(1, 3).unwrap()).unwrap(), vec![13, 14, 15]);
        assert!(window_samples(&r, 3, Window::new(1, 3).unwrap()).is_err());
    }

    #[test]
    fn t_max_substitution() {
        let b = Benchmark::one_min_max(40).unwrap();
        let big = ExperimentConfig::new(b, 8, 16, Algorithm::Nsga3, vec![1, 2, 3]);
        let small = ExperimentConfig::new(b, 8, 8, Algorithm::Nsga3, vec![1, 2]);
        let within = [record(1, Some(3), &[]), record(2, Some(9), &[])];
        assert_eq!(resolve_t_max(&within).unwrap(), 9);
        assert!(resolve_t_max(&[]).is_err());
        assert!(resolve_t_max(&[record(1, None, &[])]).is_err());
        assert_eq!(resolve_start(&big, &record(1, Some(4), &[]), Some(9)), Some(4));
        assert_eq!(resolve_start(&big, &record(1, Some(12), &[]), Some(9)), Some(9));
        assert_eq!(resolve_start(&big, &record(1, None, &[]), Some(9)), Some(9));
        assert_eq!(resolve_start(&small, &record(1, None, &[]), Some(9)), None);
    }

    #[test]
    fn pooled_summary() {
        let b = Benchmark::one_min_max(40).unwrap();
        let mut cfg = ExperimentConfig::new(b, 8, 8, Algorithm::Nsga3, vec![1, 2, 3]);
        cfg.windows = vec![Window::new(1, 2).unwrap()];
        let runs = [
            record(1, Some(0), &[9, 1, 2]),
            record(2, Some(1), &[9, 9, 3, 4]),
            record(3, None, &[9, 9]),
        ];
        let s = aggregate_quartiles(&cfg, &runs, None).unwrap();
        let w = &s.windows[0];
        assert_eq!((w.runs_used, w.runs_missing), (2, 1));
        let q = w.quartiles.unwrap();
        assert_eq!((q.q1, q.q2, q.q3, q.samples), (1.75, 2.5, 3.25, 4));
    }
}
