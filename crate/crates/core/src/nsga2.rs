//! NSGA-II survival selection variants used as baselines.
//!
//! Ties between equal crowding distances are broken by a seeded shuffle of
//! the combined population: among equally crowded individuals, the one
//! appearing last in the shuffled order is the one dropped.

use serde::{Deserialize, Serialize};

use crate::benchmarks::Evaluator;
use crate::error::{Error, Result};
use crate::individual::Population;
use crate::rng::RandomSource;
use crate::scalar::Real;
use crate::sorting::{critical_front_index, fast_nondominated_sort};
use crate::variation::{generate_offspring, generate_one, VariationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nsga2Variant {
    /// Crowding distances computed once, best `N` kept.
    Classic,
    /// One removal at a time with recomputed crowding distances.
    Sequential,
    /// One offspring and one removal per step.
    SteadyState,
}

/// Crowding distance of each member of one front.
///
/// Per objective, members are ordered by value (stable in input order); the
/// first and last get `+inf`, interior members add
/// `(next - prev) / (max - min)`. A constant objective contributes 0.
pub fn crowding_distance<T: Real, V: AsRef<[u32]>>(front: &[V]) -> Result<Vec<T>> {
    if front.is_empty() {
        return Err(Error::invalid("crowding distance of an empty front"));
    }
    let m = front[0].as_ref().len();
    let orders: Vec<Vec<usize>> = (0..m).map(|j| sorted_by_objective(front, j)).collect();
    Ok(scores_from_orders(front, &orders))
}

fn sorted_by_objective<V: AsRef<[u32]>>(front: &[V], j: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..front.len()).collect();
    idx.sort_by_key(|&i| front[i].as_ref()[j]);
    idx
}

/// Scores for the members listed in `orders` (one sorted list per objective).
/// Entries of members absent from the lists are left at zero.
fn scores_from_orders<T: Real, V: AsRef<[u32]>>(front: &[V], orders: &[Vec<usize>]) -> Vec<T> {
    let mut score = vec![T::zero(); front.len()];
    for (j, order) in orders.iter().enumerate() {
        let Some((&first, &last)) = order.first().zip(order.last()) else {
            continue;
        };
        let value = |i: usize| T::from_count(front[i].as_ref()[j] as usize);
        let range = value(last) - value(first);
        score[first] = T::infinity();
        score[last] = T::infinity();
        if range <= T::zero() {
            continue;
        }
        for w in order.windows(3) {
            score[w[1]] = score[w[1]] + (value(w[2]) - value(w[0])) / range;
        }
    }
    score
}

/// Split `R_t` (in shuffled order) into whole fronts that fit and the critical front.
fn split_fronts(combined: &Population, capacity: usize, order: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let objectives: Vec<&[u32]> = order.iter().map(|&i| combined[i].as_ref()).collect();
    let partition = fast_nondominated_sort(&objectives)?;
    let critical = critical_front_index(&partition, capacity)?;
    let fronts = partition.fronts();
    let kept: Vec<usize> = fronts[..critical - 1].iter().flatten().map(|&p| order[p]).collect();
    let crit: Vec<usize> = fronts[critical - 1].iter().map(|&p| order[p]).collect();
    Ok((kept, crit))
}

fn check_capacity(combined: &Population, capacity: usize) -> Result<()> {
    if capacity == 0 || combined.len() < capacity {
        return Err(Error::invalid(format!(
            "cannot keep {capacity} of {} individuals",
            combined.len()
        )));
    }
    Ok(())
}

/// Keep the `N` best by (front rank, crowding distance).
pub fn classic_survival(combined: &Population, capacity: usize, rng: &mut RandomSource) -> Result<Population> {
    check_capacity(combined, capacity)?;
    let mut order: Vec<usize> = (0..combined.len()).collect();
    rng.shuffle(&mut order);
    let (mut kept, crit) = split_fronts(combined, capacity, &order)?;
    let members: Vec<&[u32]> = crit.iter().map(|&i| combined[i].as_ref()).collect();
    let score: Vec<f64> = crowding_distance(&members)?;
    let mut rank: Vec<usize> = (0..crit.len()).collect();
    rank.sort_by(|&a, &b| score[b].partial_cmp(&score[a]).unwrap_or(std::cmp::Ordering::Equal));
    let need = capacity - kept.len();
    let mut chosen: Vec<usize> = rank[..need].to_vec();
    chosen.sort_unstable();
    kept.extend(chosen.into_iter().map(|k| crit[k]));
    Ok(kept.into_iter().map(|i| combined[i].clone()).collect())
}

/// Remove minimum-crowding members of the worst front one at a time,
/// recomputing crowding distances after each removal.
pub fn sequential_survival(combined: &Population, capacity: usize, rng: &mut RandomSource) -> Result<Population> {
    check_capacity(combined, capacity)?;
    let mut order: Vec<usize> = (0..combined.len()).collect();
    rng.shuffle(&mut order);
    let (mut kept, crit) = split_fronts(combined, capacity, &order)?;
    let members: Vec<&[u32]> = crit.iter().map(|&i| combined[i].as_ref()).collect();
    let m = members.first().map_or(0, |v| v.len());
    let mut orders: Vec<Vec<usize>> = (0..m).map(|j| sorted_by_objective(&members, j)).collect();
    let mut alive = vec![true; crit.len()];
    let mut remaining = crit.len();
    let need = capacity - kept.len();

    while remaining > need {
        let score: Vec<f64> = scores_from_orders(&members, &orders);
        let mut victim = None;
        let mut worst = f64::INFINITY;
        for k in 0..crit.len() {
            // `<=`: among equal scores the last one in shuffled order goes
            if alive[k] && (victim.is_none() || score[k] <= worst) {
                worst = score[k];
                victim = Some(k);
            }
        }
        let victim = victim.expect("a live member");
        alive[victim] = false;
        remaining -= 1;
        for o in &mut orders {
            o.retain(|&k| k != victim);
        }
    }
    kept.extend((0..crit.len()).filter(|&k| alive[k]).map(|k| crit[k]));
    Ok(kept.into_iter().map(|i| combined[i].clone()).collect())
}

/// One steady-state step: a single offspring, then a single removal.
pub fn steady_state_step(
    parents: &Population,
    variation: &VariationConfig,
    evaluator: &mut Evaluator,
    rng: &mut RandomSource,
) -> Result<Population> {
    let child = generate_one(parents, variation, evaluator, rng)?;
    let mut combined = parents.clone();
    combined.push(child);
    sequential_survival(&combined, parents.len(), rng)
}

/// One NSGA-II iteration of the given variant.
pub fn nsga2_generation(
    parents: &Population,
    variant: Nsga2Variant,
    variation: &VariationConfig,
    evaluator: &mut Evaluator,
    rng: &mut RandomSource,
) -> Result<Population> {
    match variant {
        Nsga2Variant::SteadyState => steady_state_step(parents, variation, evaluator, rng),
        Nsga2Variant::Classic | Nsga2Variant::Sequential => {
            let offspring = generate_offspring(parents, variation, evaluator, rng)?;
            let combined = parents.clone().union(offspring);
            if variant == Nsga2Variant::Classic {
                classic_survival(&combined, parents.len(), rng)
            } else {
                sequential_survival(&combined, parents.len(), rng)
            }
        }
    }
}
