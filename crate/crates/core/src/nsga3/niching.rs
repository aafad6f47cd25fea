//! Reference-point niching on the critical front.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::scalar::Real;

/// Which candidate a reference point contributes once its niche count is positive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoPositivePolicy {
    /// Always the closest unselected candidate.
    #[default]
    Closest,
    /// A uniformly random unselected candidate.
    Random,
}

impl std::fmt::Display for RhoPositivePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RhoPositivePolicy::Closest => "closest",
            RhoPositivePolicy::Random => "random",
        })
    }
}

impl std::str::FromStr for RhoPositivePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "closest" => Ok(RhoPositivePolicy::Closest),
            "random" => Ok(RhoPositivePolicy::Random),
            other => Err(Error::invalid(format!("unknown niching policy {other:?}"))),
        }
    }
}

/// Per-reference-point niche counts and the still-eligible set `U'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicheTable {
    pub rho: Vec<usize>,
    pub active: Vec<bool>,
}

impl NicheTable {
    /// Counts from the assignments of the already selected individuals `Z_t`.
    pub fn from_selected(n_refs: usize, selected: &[usize]) -> Self {
        let mut rho = vec![0; n_refs];
        for &r in selected {
            rho[r] += 1;
        }
        Self {
            rho,
            active: vec![true; n_refs],
        }
    }

    pub fn total(&self) -> usize {
        self.rho.iter().sum()
    }
}

/// Select `to_fill` members of the critical front.
///
/// `candidates[i] = (rp(x_i), d(x_i))` for the critical-front members.
/// Repeatedly takes the eligible reference point with minimal niche count
/// (uniform tie-break). If it still has unselected candidates, one of them is
/// accepted and the count grows; otherwise the point leaves `U'`.
///
/// Returns candidate indices in acceptance order and the final niche table.
pub fn niching_select<T: Real>(
    table: NicheTable,
    candidates: &[(usize, T)],
    to_fill: usize,
    policy: RhoPositivePolicy,
    rng: &mut RandomSource,
) -> Result<(Vec<usize>, NicheTable)> {
    if to_fill == 0 || to_fill > candidates.len() {
        return Err(Error::invalid(format!(
            "cannot select {to_fill} of {} critical-front candidates",
            candidates.len()
        )));
    }
    let n_refs = table.rho.len();
    if let Some(&(r, _)) = candidates.iter().find(|(r, _)| *r >= n_refs) {
        return Err(Error::invalid(format!("candidate assigned to unknown reference point {r}")));
    }

    // Per reference point, candidates ordered so that the closest sits at the
    // end. The shuffle before the stable sort makes equal distances tie randomly.
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    rng.shuffle(&mut order);
    order.sort_by(|&a, &b| {
        candidates[b]
            .1
            .partial_cmp(&candidates[a].1)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut pools: Vec<Vec<usize>> = vec![Vec::new(); n_refs];
    for i in order {
        pools[candidates[i].0].push(i);
    }

    let NicheTable { mut rho, mut active } = table;
    let max_level = rho.iter().copied().max().unwrap_or(0) + to_fill + 1;
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_level + 1];
    for r in 0..n_refs {
        if active[r] {
            buckets[rho[r]].push(r);
        }
    }

    let mut chosen = Vec::with_capacity(to_fill);
    let mut level = 0;
    while chosen.len() < to_fill {
        while buckets[level].is_empty() {
            level += 1;
            if level > max_level {
                unreachable!("candidates exhausted before the population was filled");
            }
        }
        let slot = rng.index(buckets[level].len());
        let r = buckets[level].swap_remove(slot);
        let pool = &mut pools[r];
        if pool.is_empty() {
            active[r] = false;
            continue;
        }
        let pick = match policy {
            RhoPositivePolicy::Random if rho[r] > 0 => pool.remove(rng.index(pool.len())),
            _ => pool.pop().expect("non-empty pool"),
        };
        chosen.push(pick);
        rho[r] += 1;
        buckets[level + 1].push(r);
    }
    Ok((chosen, NicheTable { rho, active }))
}
