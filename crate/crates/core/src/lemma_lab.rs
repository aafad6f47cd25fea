//! Constructed scenarios and Monte Carlo checks of the selection's
//! probabilistic and structural properties.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::{Benchmark, Evaluator};
use crate::error::{Error, Result};
use crate::individual::{BitString, Population};
use crate::metrics::{mei, mei_opt, theory_bounds};
use crate::nsga3::{perpendicular_distance, NormalizationState, Nsga3Config, Nsga3Survival};
use crate::reference_points::ReferencePointSet;
use crate::rng::{split_seed, RandomSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioBuilder {
    UniqueAssociation,
    FullFront,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub n: usize,
    pub pop_size: usize,
    pub ref_points: usize,
    pub builder: ScenarioBuilder,
    pub trials: usize,
}

impl ScenarioSpec {
    pub fn unique_association(n: usize, pop_size: usize, ref_points: usize, trials: usize) -> Result<Self> {
        if pop_size < 2 || 2 * pop_size > n + 1 {
            return Err(Error::invalid(format!("need 2 <= N <= (n+1)/2, got N = {pop_size}, n = {n}")));
        }
        Ok(Self {
            n,
            pop_size,
            ref_points,
            builder: ScenarioBuilder::UniqueAssociation,
            trials,
        })
    }

    pub fn full_front(n: usize, trials: usize) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::invalid(format!("full-front scenario needs odd n >= 3, got {n}")));
        }
        let pop_size = n.div_ceil(2);
        Ok(Self {
            n,
            pop_size,
            ref_points: 2 * pop_size,
            builder: ScenarioBuilder::FullFront,
            trials,
        })
    }

    fn expect(&self, builder: ScenarioBuilder) -> Result<()> {
        if self.builder != builder {
            return Err(Error::invalid(format!("scenario is {:?}, expected {builder:?}", self.builder)));
        }
        Ok(())
    }
}

/// OneMinMax individuals with the given first-objective values.
pub fn oneminmax_population(n: usize, f1: &[u32]) -> Result<Population> {
    let mut e = Evaluator::new(Benchmark::one_min_max(n)?);
    f1.iter()
        .map(|&k| e.evaluate(BitString::ones_then_zeros(k as usize, n)))
        .collect()
}

fn objective_points(pop: &Population) -> Vec<Vec<f64>> {
    pop.iter()
        .map(|x| x.objectives().values().iter().map(|&v| f64::from(v)).collect())
        .collect()
}

/// Reference point of each member when every member has a strictly nearest
/// reference direction, `None` when some member has a tie.
fn strict_assignment(normalized: &[Vec<f64>], refs: &ReferencePointSet<f64>) -> Option<Vec<usize>> {
    normalized
        .iter()
        .map(|p| {
            let mut d: Vec<(f64, usize)> = refs
                .points()
                .iter()
                .enumerate()
                .map(|(r, w)| (perpendicular_distance(p, w), r))
                .collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0));
            (d.len() < 2 || d[0].0 + 1e-9 < d[1].0).then_some(d[0].1)
        })
        .collect()
}

fn injective(pop: &Population, ref_points: usize) -> Result<bool> {
    let refs = ReferencePointSet::<f64>::with_count(ref_points)?;
    let cfg = Nsga3Config::default();
    let mut state = NormalizationState::new(2, cfg.epsilon_nad, cfg.asf_weight);
    let all: Vec<usize> = (0..pop.len()).collect();
    let normalized = state.normalize(&objective_points(pop), &all)?;
    Ok(match strict_assignment(&normalized, &refs) {
        Some(mut a) => {
            a.sort_unstable();
            a.windows(2).all(|w| w[0] != w[1])
        }
        None => false,
    })
}

/// `2N` OneMinMax individuals with distinct first objectives including 0 and
/// `n`, each strictly nearest to its own reference point.
pub fn build_unique_association_rt(spec: &ScenarioSpec, rng: &mut RandomSource) -> Result<Population> {
    spec.expect(ScenarioBuilder::UniqueAssociation)?;
    let (n, size) = (spec.n, 2 * spec.pop_size);
    let mut interior: Vec<u32> = (1..n as u32).collect();
    rng.shuffle(&mut interior);
    let mut f1: Vec<u32> = interior[..size - 2].to_vec();
    f1.extend([0, n as u32]);
    f1.sort_unstable();
    let pop = oneminmax_population(n, &f1)?;
    if !injective(&pop, spec.ref_points)? {
        return Err(Error::Construction(format!(
            "{} reference points do not separate the {size} constructed individuals",
            spec.ref_points
        )));
    }
    Ok(pop)
}

/// Double the reference point count from `4N` until the constructed
/// combined population associates injectively.
pub fn unique_association_scenario(
    n: usize,
    pop_size: usize,
    trials: usize,
    rng: &mut RandomSource,
) -> Result<(ScenarioSpec, Population)> {
    let mut spec = ScenarioSpec::unique_association(n, pop_size, 4 * pop_size, trials)?;
    for _ in 0..24 {
        match build_unique_association_rt(&spec, &mut rng.clone()) {
            Ok(pop) => {
                *rng = rng.fork(spec.ref_points as u64);
                return Ok((spec, pop));
            }
            Err(Error::Construction(_)) => spec.ref_points *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Construction("no injective reference point count found".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalLossEstimate {
    pub trials: usize,
    /// `0^n` removed.
    pub p_specific: f64,
    pub p_at_least_one: f64,
    pub p_both: f64,
}

impl ExtremalLossEstimate {
    /// `(1/2, 3/4 + 1/(4(2N-1)), 1/4 - 1/(4(2N-1)))`.
    pub fn targets(pop_size: usize) -> [f64; 3] {
        let k = 1.0 / (4.0 * (2 * pop_size - 1) as f64);
        [0.5, 0.75 + k, 0.25 - k]
    }

    pub fn values(&self) -> [f64; 3] {
        [self.p_specific, self.p_at_least_one, self.p_both]
    }
}

/// Apply one survival selection to the fixed `rt` per trial and count how
/// often the extremal points are dropped.
pub fn estimate_extremal_loss(spec: &ScenarioSpec, rt: &Population, seed: u64) -> Result<ExtremalLossEstimate> {
    spec.expect(ScenarioBuilder::UniqueAssociation)?;
    let refs = ReferencePointSet::<f64>::with_count(spec.ref_points)?;
    let base = Nsga3Survival::new(refs, Nsga3Config::default());
    let outcomes: Vec<(bool, bool)> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let mut survival = base.clone();
            let mut rng = RandomSource::new(split_seed(seed, t as u64));
            let out = survival.select(rt, spec.pop_size, &mut rng)?;
            let (zeros, ones) = out.population.extremal_coverage(spec.n);
            Ok((!zeros, !ones))
        })
        .collect::<Result<_>>()?;
    let t = spec.trials.max(1) as f64;
    let count = |f: fn(&(bool, bool)) -> bool| outcomes.iter().filter(|o| f(o)).count() as f64 / t;
    Ok(ExtremalLossEstimate {
        trials: spec.trials,
        p_specific: count(|o| o.0),
        p_at_least_one: count(|o| o.0 || o.1),
        p_both: count(|o| o.0 && o.1),
    })
}

/// One individual per front value: `1^k 0^(n-k)` for `k = 0..=n`.
pub fn build_full_front_rt(spec: &ScenarioSpec) -> Result<Population> {
    spec.expect(ScenarioBuilder::FullFront)?;
    if spec.n % 2 == 0 || 2 * spec.pop_size != spec.n + 1 {
        return Err(Error::invalid(format!(
            "full front of n = {} needs odd n and N = (n+1)/2",
            spec.n
        )));
    }
    let f1: Vec<u32> = (0..=spec.n as u32).collect();
    oneminmax_population(spec.n, &f1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegradationEstimate {
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub std_error: f64,
    pub mei_opt: u32,
}

/// Mean MEI after one survival selection on the full front.
pub fn estimate_full_front_degradation(spec: &ScenarioSpec, seed: u64) -> Result<DegradationEstimate> {
    let rt = build_full_front_rt(spec)?;
    let refs = ReferencePointSet::<f64>::with_count(spec.ref_points)?;
    let base = Nsga3Survival::new(refs, Nsga3Config::default());
    let values: Vec<f64> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let mut survival = base.clone();
            let mut rng = RandomSource::new(split_seed(seed, t as u64));
            let out = survival.select(&rt, spec.pop_size, &mut rng)?;
            if out.population.len() != spec.pop_size {
                return Err(Error::ContractViolation(format!(
                    "selected {} of {}",
                    out.population.len(),
                    spec.pop_size
                )));
            }
            Ok(f64::from(mei(&out.population.f1_values(), spec.n)?))
        })
        .collect::<Result<_>>()?;
    let k = values.len().max(1) as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
    Ok(DegradationEstimate {
        n: spec.n,
        trials: spec.trials,
        mean,
        std_error: (var / k).sqrt(),
        mei_opt: mei_opt(spec.pop_size, spec.n)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaProperty {
    /// Minimum and maximum first objective of `R_t` survive.
    ExtremalSurvival,
    /// Normalization is `f / n` once both extremals are present.
    Normalization,
    /// `|f_1^n - r_1| <= (2 - sqrt 2)/(N_r - 1)` for every association.
    AssociationBound,
    /// Reference points active in `R_t` stay active in `P_{t+1}`.
    ActiveMonotone,
    /// MEI bound once every reference point is active.
    MeiUpperBound,
}

impl LemmaProperty {
    pub fn from_lemma(lemma: u8) -> Result<Self> {
        Ok(match lemma {
            2 => LemmaProperty::ExtremalSurvival,
            4 => LemmaProperty::Normalization,
            5 => LemmaProperty::AssociationBound,
            6 => LemmaProperty::ActiveMonotone,
            8 => LemmaProperty::MeiUpperBound,
            other => return Err(Error::invalid(format!("no property check for lemma {other}"))),
        })
    }

    pub fn lemma(self) -> u8 {
        match self {
            LemmaProperty::ExtremalSurvival => 2,
            LemmaProperty::Normalization => 4,
            LemmaProperty::AssociationBound => 5,
            LemmaProperty::ActiveMonotone => 6,
            LemmaProperty::MeiUpperBound => 8,
        }
    }
}

/// A reproducible counterexample: rebuild with [`property_instance`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureReport {
    pub seed: u64,
    pub n: usize,
    pub pop_size: usize,
    pub ref_points: usize,
    pub f1_values: Vec<u32>,
    pub detail: String,
}

/// A randomized OneMinMax selection instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyInstance {
    pub seed: u64,
    pub n: usize,
    pub pop_size: usize,
    pub ref_points: usize,
    /// First objectives of the `2N` members of `R_t`.
    pub f1_values: Vec<u32>,
}

/// Draw `n` in `[4, 80]`, `N < n + 1`, `N_r <= N`, and `2N` first-objective
/// values. With `extremals`, `0` and `n` are always among them.
pub fn property_instance(seed: u64, extremals: bool) -> PropertyInstance {
    let mut rng = RandomSource::new(seed);
    let n = 4 + rng.index(77);
    let pop_size = 2 + rng.index(n - 1);
    let ref_points = 2 + rng.index(pop_size - 1);
    let clustered = rng.bernoulli_half();
    let (lo, hi) = if clustered {
        let a = rng.index(n + 1);
        let b = rng.index(n + 1);
        (a.min(b), a.max(b))
    } else {
        (0, n)
    };
    let mut f1: Vec<u32> = (0..2 * pop_size).map(|_| (lo + rng.index(hi - lo + 1)) as u32).collect();
    if extremals {
        f1[0] = 0;
        f1[1] = n as u32;
        rng.shuffle(&mut f1);
    }
    PropertyInstance {
        seed,
        n,
        pop_size,
        ref_points,
        f1_values: f1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub lemma: u8,
    pub trials: usize,
    pub violations: usize,
    pub estimates: Vec<f64>,
    pub targets: Vec<f64>,
    pub tolerances: Vec<f64>,
    pub failures: Vec<FailureReport>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

const MAX_FAILURES: usize = 10;

/// Largest observed error (0 when not applicable) or a violation message.
fn check_instance(property: LemmaProperty, inst: &PropertyInstance) -> Result<std::result::Result<f64, String>> {
    let pop = oneminmax_population(inst.n, &inst.f1_values)?;
    let refs = ReferencePointSet::<f64>::with_count(inst.ref_points)?;
    let mut rng = RandomSource::new(split_seed(inst.seed, 1));
    let n = inst.n as f64;
    match property {
        LemmaProperty::Normalization => {
            let cfg = Nsga3Config::default();
            let mut state = NormalizationState::new(2, cfg.epsilon_nad, cfg.asf_weight);
            // earlier generation without the extremals, to exercise carried state
            let warm = property_instance(split_seed(inst.seed, 2), false);
            let warm_f1: Vec<u32> = warm.f1_values.iter().map(|&v| v.min(inst.n as u32)).collect();
            let warm_pop = oneminmax_population(inst.n, &warm_f1)?;
            let all: Vec<usize> = (0..warm_pop.len()).collect();
            state.normalize(&objective_points(&warm_pop), &all)?;
            let all: Vec<usize> = (0..pop.len()).collect();
            let normalized = state.normalize(&objective_points(&pop), &all)?;
            let mut worst = 0.0f64;
            for (x, z) in pop.iter().zip(&normalized) {
                for (j, &v) in x.objectives().values().iter().enumerate() {
                    worst = worst.max((z[j] - f64::from(v) / n).abs());
                }
            }
            Ok(if worst <= 1e-12 {
                Ok(worst)
            } else {
                Err(format!("normalization off by {worst:e}"))
            })
        }
        _ => {
            let mut survival = Nsga3Survival::new(refs, Nsga3Config::default());
            let out = survival.select(&pop, inst.pop_size, &mut rng)?;
            let kept = out.population.f1_values();
            Ok(match property {
                LemmaProperty::ExtremalSurvival => {
                    let (lo, hi) = (inst.f1_values.iter().min(), inst.f1_values.iter().max());
                    if kept.iter().min() == lo && kept.iter().max() == hi {
                        Ok(0.0)
                    } else {
                        Err(format!("kept range {:?}..{:?}", kept.iter().min(), kept.iter().max()))
                    }
                }
                LemmaProperty::AssociationBound => {
                    let bound = (2.0 - 2f64.sqrt()) / (inst.ref_points - 1) as f64;
                    let mut worst = 0.0f64;
                    for (r, z) in out.combined_refs.iter().zip(&out.combined_normalized) {
                        if let (Some(r), Some(z)) = (r, z) {
                            worst = worst.max((z[0] - survival.refs().point(*r)[0]).abs());
                        }
                    }
                    if worst <= bound + 1e-12 {
                        Ok(worst)
                    } else {
                        Err(format!("association gap {worst} above {bound}"))
                    }
                }
                LemmaProperty::ActiveMonotone => {
                    let mut before: Vec<usize> = out.combined_refs.iter().flatten().copied().collect();
                    before.sort_unstable();
                    before.dedup();
                    let missing: Vec<usize> =
                        before.into_iter().filter(|r| !out.survivor_refs.contains(r)).collect();
                    if missing.is_empty() {
                        Ok(0.0)
                    } else {
                        Err(format!("reference points {missing:?} lost every member"))
                    }
                }
                LemmaProperty::MeiUpperBound => {
                    let bound = theory_bounds(inst.n, inst.pop_size, inst.ref_points)?.mei_upper;
                    let (z, o) = out.population.extremal_coverage(inst.n);
                    let value = mei(&kept, inst.n)?;
                    if !(z && o && out.active_refs == inst.ref_points) || u64::from(value) <= bound {
                        Ok(f64::from(value))
                    } else {
                        Err(format!("MEI {value} above {bound} with all reference points active"))
                    }
                }
                LemmaProperty::Normalization => unreachable!(),
            })
        }
    }
}

/// Whether an instance satisfies the hypotheses of the property.
fn applicable(property: LemmaProperty, inst: &PropertyInstance) -> Result<bool> {
    if property != LemmaProperty::MeiUpperBound {
        return Ok(true);
    }
    let pop = oneminmax_population(inst.n, &inst.f1_values)?;
    let refs = ReferencePointSet::<f64>::with_count(inst.ref_points)?;
    let mut survival = Nsga3Survival::new(refs, Nsga3Config::default());
    let out = survival.select(&pop, inst.pop_size, &mut RandomSource::new(split_seed(inst.seed, 1)))?;
    let (z, o) = out.population.extremal_coverage(inst.n);
    Ok(z && o && out.active_refs == inst.ref_points)
}

/// Check one property on `trials` instances satisfying its hypotheses.
pub fn check_lemma_properties(lemma: u8, trials: usize, seed: u64) -> Result<ValidationReport> {
    let property = LemmaProperty::from_lemma(lemma)?;
    let extremals = property != LemmaProperty::ExtremalSurvival;
    let results: Vec<(u64, std::result::Result<f64, String>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut k = 0u64;
            loop {
                let inst_seed = split_seed(seed, ((t as u64) << 16) | k);
                let inst = property_instance(inst_seed, extremals);
                if applicable(property, &inst)? {
                    return Ok((inst_seed, check_instance(property, &inst)?));
                }
                k += 1;
                if k == 1 << 16 {
                    return Err(Error::Construction("no instance met the hypotheses".into()));
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut violations = 0;
    for (inst_seed, r) in results {
        match r {
            Ok(e) => worst = worst.max(e),
            Err(detail) => {
                violations += 1;
                if failures.len() < MAX_FAILURES {
                    let inst = property_instance(inst_seed, extremals);
                    failures.push(FailureReport {
                        seed: inst_seed,
                        n: inst.n,
                        pop_size: inst.pop_size,
                        ref_points: inst.ref_points,
                        f1_values: inst.f1_values,
                        detail,
                    });
                }
            }
        }
    }
    let (targets, tolerances) = match property {
        LemmaProperty::Normalization => (vec![0.0], vec![1e-12]),
        LemmaProperty::AssociationBound => (vec![0.0], vec![1e-12]),
        _ => (vec![], vec![]),
    };
    Ok(ValidationReport {
        lemma,
        trials,
        violations,
        estimates: vec![worst],
        targets,
        tolerances,
        failures,
    })
}

/// Extremal-loss estimates against their targets, tolerance 0.01 each.
pub fn validate_extremal_loss(n: usize, pop_size: usize, trials: usize, seed: u64) -> Result<ValidationReport> {
    let mut rng = RandomSource::new(seed);
    let (mut spec, rt) = unique_association_scenario(n, pop_size, trials, &mut rng)?;
    spec.trials = trials;
    let est = estimate_extremal_loss(&spec, &rt, rng.seed())?;
    let targets = ExtremalLossEstimate::targets(pop_size);
    let tol = 0.01;
    let violations = est.values().iter().zip(targets).filter(|(e, t)| (*e - t).abs() > tol).count();
    Ok(ValidationReport {
        lemma: 9,
        trials,
        violations,
        estimates: est.values().to_vec(),
        targets: targets.to_vec(),
        tolerances: vec![tol; 3],
        failures: vec![],
    })
}

/// Full-front degradation trend: strictly increasing mean over `sizes` and
/// the last mean at least twice its optimum.
pub fn validate_full_front_trend(sizes: &[usize], trials: usize, seed: u64) -> Result<(ValidationReport, Vec<DegradationEstimate>)> {
    let estimates: Vec<DegradationEstimate> = sizes
        .iter()
        .map(|&n| estimate_full_front_degradation(&ScenarioSpec::full_front(n, trials)?, split_seed(seed, n as u64)))
        .collect::<Result<_>>()?;
    let mut violations = estimates.windows(2).filter(|w| w[1].mean <= w[0].mean).count();
    if let Some(last) = estimates.last() {
        if last.mean < 2.0 * f64::from(last.mei_opt) {
            violations += 1;
        }
    }
    let report = ValidationReport {
        lemma: 10,
        trials,
        violations,
        estimates: estimates.iter().map(|e| e.mean).collect(),
        targets: estimates.last().map(|e| vec![2.0 * f64::from(e.mei_opt)]).unwrap_or_default(),
        tolerances: vec![],
        failures: vec![],
    };
    Ok((report, estimates))
}

pub const LEMMA9_N: usize = 9;
pub const LEMMA9_POP_SIZE: usize = 5;
pub const LEMMA10_SIZES: [usize; 4] = [51, 101, 201, 401];

/// Dispatch for the `validate` subcommand.
pub fn validate_lemma(lemma: u8, trials: usize, seed: u64) -> Result<ValidationReport> {
    match lemma {
        9 => validate_extremal_loss(LEMMA9_N, LEMMA9_POP_SIZE, trials, seed),
        10 => validate_full_front_trend(&LEMMA10_SIZES, trials, seed).map(|(r, _)| r),
        other => check_lemma_properties(other, trials, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_association_construction() {
        let mut rng = RandomSource::new(5);
        let spec = ScenarioSpec::unique_association(9, 5, 608, 10).unwrap();
        let rt = build_unique_association_rt(&spec, &mut rng).unwrap();
        assert_eq!(rt.len(), 10);
        assert_eq!(rt.extremal_coverage(9), (true, true));
        let mut f1 = rt.f1_values();
        f1.dedup();
        assert_eq!(f1.len(), 10);

        let two = ScenarioSpec::unique_association(9, 5, 2, 10).unwrap();
        assert!(matches!(build_unique_association_rt(&two, &mut rng), Err(Error::Construction(_))));
        assert!(ScenarioSpec::unique_association(9, 6, 608, 10).is_err());
    }

    #[test]
    fn doubling_search_finds_injective_count() {
        let mut rng = RandomSource::new(1);
        let (spec, rt) = unique_association_scenario(9, 5, 10, &mut rng).unwrap();
        assert!(spec.ref_points % 20 == 0 && (spec.ref_points / 20).is_power_of_two());
        assert!(injective(&rt, spec.ref_points).unwrap());
    }

    #[test]
    fn loss_probabilities_identity() {
        let mut rng = RandomSource::new(2);
        let (mut spec, rt) = unique_association_scenario(9, 5, 2000, &mut rng).unwrap();
        spec.trials = 2000;
        let e = estimate_extremal_loss(&spec, &rt, 7).unwrap();
        assert!((e.p_at_least_one - (2.0 * e.p_specific - e.p_both)).abs() < 0.05);
        let t = ExtremalLossEstimate::targets(5);
        assert!((t[1] - 7.0 / 9.0).abs() < 1e-15 && (t[2] - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn full_front_construction() {
        let spec = ScenarioSpec::full_front(9, 1).unwrap();
        assert_eq!((spec.pop_size, spec.ref_points), (5, 10));
        let rt = build_full_front_rt(&spec).unwrap();
        assert_eq!(rt.f1_values(), (0..=9).collect::<Vec<u32>>());
        assert_eq!(mei(&rt.f1_values(), 9).unwrap(), 1);
        assert!(ScenarioSpec::full_front(10, 1).is_err());
        let est = estimate_full_front_degradation(&spec, 3).unwrap();
        assert!(est.mean >= 2.0);
    }

    #[test]
    fn property_suites_small() {
        for lemma in [2, 4, 5, 6, 8] {
            let r = check_lemma_properties(lemma, 300, 11).unwrap();
            assert!(r.passed(), "lemma {lemma}: {:?}", r.failures);
        }
        assert!(check_lemma_properties(3, 1, 0).is_err());
    }

    #[test]
    fn instances_replay() {
        assert_eq!(property_instance(77, true), property_instance(77, true));
        let i = property_instance(78, true);
        assert!(i.ref_points <= i.pop_size && i.pop_size < i.n + 1);
        assert!(i.f1_values.contains(&0) && i.f1_values.contains(&(i.n as u32)));
    }
}
