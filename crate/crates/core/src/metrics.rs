//! Maximum empty interval (MEI) and the closed-form bounds around it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::individual::Population;
use crate::nsga3::{associate, count_distinct, NormalizationState};
use crate::reference_points::ReferencePointSet;
use crate::rng::RandomSource;
use crate::scalar::Real;
use crate::sorting::fast_nondominated_sort;

/// Largest gap among the sorted distinct first-objective values, including
/// the boundary gaps to 0 and `n`.
pub fn mei(values: &[u32], n: usize) -> Result<u32> {
    if values.is_empty() {
        return Err(Error::invalid("MEI of an empty set"));
    }
    let n = n as u32;
    if let Some(v) = values.iter().find(|&&v| v > n) {
        return Err(Error::invalid(format!("value {v} outside [0, {n}]")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(mei_sorted(&sorted, n))
}

fn mei_sorted(sorted: &[u32], n: u32) -> u32 {
    let first = sorted[0];
    let last = sorted[sorted.len() - 1];
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(first.max(n - last), u32::max)
}

/// `ceil(n / (N - 1))`, the best MEI a size-`N` set with both extremals can reach.
pub fn mei_opt(pop_size: usize, n: usize) -> Result<u32> {
    if pop_size < 2 {
        return Err(Error::invalid(format!("population size must be at least 2, got {pop_size}")));
    }
    Ok(n.div_ceil(pop_size - 1) as u32)
}

/// `ceil(x)` that snaps values within 1e-15 (relative) of an integer first.
pub fn guarded_ceil(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() <= 1e-15 * x.abs().max(1.0) {
        r as u64
    } else {
        x.ceil() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryBounds {
    /// `ceil(n / (N - 1))`.
    pub mei_opt: u32,
    /// `ceil((5 - 2 sqrt 2) n / (N_r - 1))`.
    pub mei_upper: u64,
    /// `ceil(2 (2 - sqrt 2) n / (N_r - 1))`.
    pub runtime_exponent: u64,
}

pub fn theory_bounds(n: usize, pop_size: usize, n_refs: usize) -> Result<TheoryBounds> {
    if n_refs < 2 {
        return Err(Error::invalid(format!("need at least 2 reference points, got {n_refs}")));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let denom = (n_refs - 1) as f64;
    Ok(TheoryBounds {
        mei_opt: mei_opt(pop_size, n)?,
        mei_upper: guarded_ceil((5.0 - 2.0 * sqrt2) * n as f64 / denom),
        runtime_exponent: guarded_ceil(2.0 * (2.0 - sqrt2) * n as f64 / denom),
    })
}

/// Per-population telemetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeiReport {
    pub mei: u32,
    /// Distinct first-objective values on the Pareto front, ascending.
    pub sorted_f1: Vec<u32>,
    pub covers_zeros: bool,
    pub covers_ones: bool,
    pub active_refpoints: usize,
}

impl MeiReport {
    /// Report with a precomputed active reference point count (0 if none).
    /// Only Pareto-optimal members enter the MEI; with none of them it is `n`.
    pub fn from_population(pop: &Population, n: usize, active: Option<usize>) -> Result<Self> {
        if pop.is_empty() {
            return Err(Error::invalid("report on an empty population"));
        }
        let mut sorted = pop.front_f1_values(n);
        sorted.sort_unstable();
        sorted.dedup();
        let (covers_zeros, covers_ones) = pop.extremal_coverage(n);
        Ok(Self {
            mei: if sorted.is_empty() { n as u32 } else { mei_sorted(&sorted, n as u32) },
            sorted_f1: sorted,
            covers_zeros,
            covers_ones,
            active_refpoints: active.unwrap_or(0),
        })
    }

    pub fn covers_both(&self) -> bool {
        self.covers_zeros && self.covers_ones
    }
}

/// MEI, extremal coverage and the number of reference points with at least
/// one associated member, normalizing with a copy of `state`.
pub fn population_report<T: Real>(
    pop: &Population,
    n: usize,
    refs: &ReferencePointSet<T>,
    state: &NormalizationState<T>,
    tie_tolerance: T,
    rng: &mut RandomSource,
) -> Result<MeiReport> {
    if pop.is_empty() {
        return Err(Error::invalid("report on an empty population"));
    }
    let partition = fast_nondominated_sort(pop.as_slice())?;
    let order: Vec<usize> = partition.fronts().iter().flatten().copied().collect();
    let points: Vec<Vec<T>> = order
        .iter()
        .map(|&i| pop[i].objectives().values().iter().map(|&v| T::from_count(v as usize)).collect())
        .collect();
    let first: Vec<usize> = (0..partition.fronts()[0].len()).collect();
    let mut scratch = state.clone();
    let normalized = scratch.normalize(&points, &first)?;
    let assoc = associate(&normalized, refs, tie_tolerance, rng);
    let active = count_distinct(&assoc.assignments, refs.len());
    MeiReport::from_population(pop, n, Some(active))
}
