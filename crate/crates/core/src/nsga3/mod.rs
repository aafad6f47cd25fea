//! NSGA-III survival selection and generation step.

mod associate;
mod niching;
mod normalize;

pub use associate::{associate, perpendicular_distance, AssociationResult};
pub use niching::{niching_select, NicheTable, RhoPositivePolicy};
pub use normalize::{asf, NadirSource, NormalizationState};

use serde::{Deserialize, Serialize};

use crate::benchmarks::Evaluator;
use crate::error::{Error, Result};
use crate::individual::Population;
use crate::metrics::MeiReport;
use crate::reference_points::ReferencePointSet;
use crate::rng::RandomSource;
use crate::scalar::Real;
use crate::sorting::{critical_front_index, fast_nondominated_sort};
use crate::variation::{generate_offspring, VariationConfig};

/// Tunables of the NSGA-III survival selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nsga3Config {
    /// Minimum admissible hyperplane intercept and nadir-ideal gap.
    pub epsilon_nad: f64,
    /// Off-axis weight of the achievement scalarization.
    pub asf_weight: f64,
    /// Distances within this of the minimum are association ties.
    pub tie_tolerance: f64,
    pub niching_rho_positive: RhoPositivePolicy,
}

impl Default for Nsga3Config {
    fn default() -> Self {
        Self {
            epsilon_nad: 1e-6,
            asf_weight: 1e-6,
            tie_tolerance: 1e-12,
            niching_rho_positive: RhoPositivePolicy::Closest,
        }
    }
}

/// Result of one survival selection on `R_t`.
#[derive(Debug, Clone)]
pub struct SurvivalOutcome<T> {
    pub population: Population,
    /// For each survivor, its index in the combined population passed in.
    pub origin: Vec<usize>,
    /// Reference point of each survivor, aligned with `population`.
    pub survivor_refs: Vec<usize>,
    /// Reference point of every combined member in `F_1..F_{i*}`, `None` otherwise.
    pub combined_refs: Vec<Option<usize>>,
    /// Normalized objectives of every combined member in `F_1..F_{i*}`.
    pub combined_normalized: Vec<Option<Vec<T>>>,
    /// Number of distinct reference points among the survivors.
    pub active_refs: usize,
}

/// Reference points plus the normalization state carried between generations.
#[derive(Debug, Clone)]
pub struct Nsga3Survival<T> {
    refs: ReferencePointSet<T>,
    config: Nsga3Config,
    state: NormalizationState<T>,
}

impl<T: Real> Nsga3Survival<T> {
    pub fn new(refs: ReferencePointSet<T>, config: Nsga3Config) -> Self {
        let state = NormalizationState::new(
            refs.objectives(),
            T::from_f64_lossy(config.epsilon_nad),
            T::from_f64_lossy(config.asf_weight),
        );
        Self { refs, config, state }
    }

    pub fn refs(&self) -> &ReferencePointSet<T> {
        &self.refs
    }

    pub fn config(&self) -> &Nsga3Config {
        &self.config
    }

    pub fn state(&self) -> &NormalizationState<T> {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut NormalizationState<T> {
        &mut self.state
    }

    /// Reduce `combined` to `capacity` members: whole fronts first, then
    /// reference-point niching on the critical front.
    pub fn select(
        &mut self,
        combined: &Population,
        capacity: usize,
        rng: &mut RandomSource,
    ) -> Result<SurvivalOutcome<T>> {
        if capacity == 0 || combined.len() < capacity {
            return Err(Error::invalid(format!(
                "cannot select {capacity} survivors from {} individuals",
                combined.len()
            )));
        }
        // Seeded shuffle; every later tie-break that is not explicitly random
        // follows this order.
        let mut order: Vec<usize> = (0..combined.len()).collect();
        rng.shuffle(&mut order);
        let objectives: Vec<&[u32]> = order.iter().map(|&i| combined[i].as_ref()).collect();

        let partition = fast_nondominated_sort(&objectives)?;
        let critical = critical_front_index(&partition, capacity)?;
        let fronts = &partition.fronts()[..critical];

        // Z = F_1 ∪ ... ∪ F_{i*}, positions in shuffled order
        let members: Vec<usize> = fronts.iter().flatten().copied().collect();
        let already: usize = fronts[..critical - 1].iter().map(Vec::len).sum();
        let points: Vec<Vec<T>> = members
            .iter()
            .map(|&pos| objectives[pos].iter().map(|&v| T::from_count(v as usize)).collect())
            .collect();
        let first_front: Vec<usize> = (0..fronts[0].len()).collect();
        let normalized = self.state.normalize(&points, &first_front)?;
        let assoc = associate(
            &normalized,
            &self.refs,
            T::from_f64_lossy(self.config.tie_tolerance),
            rng,
        );

        let table = NicheTable::from_selected(self.refs.len(), &assoc.assignments[..already]);
        let candidates: Vec<(usize, T)> = (already..members.len())
            .map(|k| (assoc.assignments[k], assoc.distances[k]))
            .collect();
        let (picked, _) = niching_select(
            table,
            &candidates,
            capacity - already,
            self.config.niching_rho_positive,
            rng,
        )?;

        let mut combined_refs = vec![None; combined.len()];
        let mut combined_normalized = vec![None; combined.len()];
        for (k, &pos) in members.iter().enumerate() {
            combined_refs[order[pos]] = Some(assoc.assignments[k]);
            combined_normalized[order[pos]] = Some(normalized[k].clone());
        }

        let chosen: Vec<usize> = (0..already).chain(picked.into_iter().map(|c| already + c)).collect();
        let origin: Vec<usize> = chosen.iter().map(|&k| order[members[k]]).collect();
        let survivor_refs: Vec<usize> = chosen.iter().map(|&k| assoc.assignments[k]).collect();
        let population: Population = origin.iter().map(|&i| combined[i].clone()).collect();
        let active_refs = count_distinct(&survivor_refs, self.refs.len());

        Ok(SurvivalOutcome {
            population,
            origin,
            survivor_refs,
            combined_refs,
            combined_normalized,
            active_refs,
        })
    }
}

pub(crate) fn count_distinct(refs: &[usize], n_refs: usize) -> usize {
    let mut seen = vec![false; n_refs];
    refs.iter().filter(|&&r| !std::mem::replace(&mut seen[r], true)).count()
}

/// Output of one NSGA-III generation.
#[derive(Debug, Clone)]
pub struct GenerationOutcome<T> {
    pub survival: SurvivalOutcome<T>,
    pub report: MeiReport,
    pub evaluations: u64,
}

impl<T> GenerationOutcome<T> {
    pub fn population(&self) -> &Population {
        &self.survival.population
    }
}

/// One iteration of the NSGA-III main loop: offspring, `R_t = P_t ∪ Q_t`,
/// survival selection back to `|P_t|` members.
pub fn nsga3_generation<T: Real>(
    parents: &Population,
    survival: &mut Nsga3Survival<T>,
    variation: &VariationConfig,
    evaluator: &mut Evaluator,
    rng: &mut RandomSource,
) -> Result<GenerationOutcome<T>> {
    let capacity = parents.len();
    let before = evaluator.evaluations();
    let offspring = generate_offspring(parents, variation, evaluator, rng)?;
    let combined = parents.clone().union(offspring);
    let outcome = survival.select(&combined, capacity, rng)?;
    let n = evaluator.benchmark().n;
    let report = MeiReport::from_population(&outcome.population, n, Some(outcome.active_refs))?;
    Ok(GenerationOutcome {
        survival: outcome,
        report,
        evaluations: evaluator.evaluations() - before,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::Benchmark;
    use crate::individual::{random_bitstring, BitString};

    fn omm_population(n: usize, f1: &[usize]) -> Population {
        let mut e = Evaluator::new(Benchmark::one_min_max(n).unwrap());
        f1.iter()
            .map(|&k| e.evaluate(BitString::ones_then_zeros(k, n)).unwrap())
            .collect()
    }

    #[test]
    fn select_keeps_capacity_and_extremals() {
        let n = 40;
        let r = omm_population(n, &[0, 3, 7, 9, 12, 15, 20, 22, 26, 30, 33, 40]);
        let mut s = Nsga3Survival::<f64>::new(ReferencePointSet::with_count(4).unwrap(), Nsga3Config::default());
        for seed in 0..30 {
            let out = s.select(&r, 6, &mut RandomSource::new(seed)).unwrap();
            assert_eq!(out.population.len(), 6);
            assert_eq!(out.population.extremal_coverage(n), (true, true));
            assert_eq!(out.active_refs, 4);
        }
    }

    #[test]
    fn select_rejects_too_small_input() {
        let r = omm_population(10, &[1, 2]);
        let mut s = Nsga3Survival::<f64>::new(ReferencePointSet::with_count(3).unwrap(), Nsga3Config::default());
        assert!(s.select(&r, 3, &mut RandomSource::new(0)).is_err());
    }

    #[test]
    fn whole_fronts_are_kept_before_niching() {
        let n = 8;
        let mut e = Evaluator::new(Benchmark::lotz(n).unwrap());
        // F_1 = {(8,0), (0,8), (2,2)} fills the capacity exactly
        let r: Population = ["11111111", "00000000", "11000100", "10000010", "01010101"]
            .iter()
            .map(|s| e.evaluate(BitString::parse(s).unwrap()).unwrap())
            .collect();
        let mut s = Nsga3Survival::<f64>::new(ReferencePointSet::with_count(3).unwrap(), Nsga3Config::default());
        let out = s.select(&r, 3, &mut RandomSource::new(2)).unwrap();
        let mut kept: Vec<_> = out.population.iter().map(|x| x.genotype().to_string()).collect();
        kept.sort();
        assert_eq!(kept, vec!["00000000", "11000100", "11111111"]);
    }

    #[test]
    fn generation_preserves_size_and_counts_evaluations() {
        let n = 30;
        let mut rng = RandomSource::new(12);
        let mut e = Evaluator::new(Benchmark::one_min_max(n).unwrap());
        let mut pop: Population = (0..10)
            .map(|_| e.evaluate(random_bitstring(n, &mut rng).unwrap()).unwrap())
            .collect();
        let mut s = Nsga3Survival::<f64>::new(ReferencePointSet::with_count(10).unwrap(), Nsga3Config::default());
        let var = VariationConfig::default();
        let (mut lo, mut hi) = (u32::MAX, 0);
        for _ in 0..200 {
            let out = nsga3_generation(&pop, &mut s, &var, &mut e, &mut rng).unwrap();
            assert_eq!(out.evaluations, 10);
            pop = out.survival.population;
            assert_eq!(pop.len(), 10);
            let f1 = pop.f1_values();
            let (a, b) = (*f1.iter().min().unwrap(), *f1.iter().max().unwrap());
            assert!(a <= lo && b >= hi);
            lo = a;
            hi = b;
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let run = |seed| {
            let n = 25;
            let mut rng = RandomSource::new(seed);
            let mut e = Evaluator::new(Benchmark::one_min_max(n).unwrap());
            let mut pop: Population = (0..8)
                .map(|_| e.evaluate(random_bitstring(n, &mut rng).unwrap()).unwrap())
                .collect();
            let mut s = Nsga3Survival::<f64>::new(ReferencePointSet::with_count(8).unwrap(), Nsga3Config::default());
            let mut trace = Vec::new();
            for _ in 0..50 {
                pop = nsga3_generation(&pop, &mut s, &VariationConfig::default(), &mut e, &mut rng)
                    .unwrap()
                    .survival
                    .population;
                trace.push(pop.clone());
            }
            trace
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }
}
