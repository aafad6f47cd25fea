//! Offspring generation by standard bit-wise mutation.

use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::benchmarks::Evaluator;
use crate::error::{Error, Result};
use crate::individual::{BitString, Population};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariationScheme {
    /// Every parent is mutated exactly once.
    #[default]
    FairBitwise,
    /// Each offspring mutates a parent drawn uniformly with replacement.
    UniformParentBitwise,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossover {
    #[default]
    None,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    /// Per-bit flip probability; `None` means `1/n`.
    pub mutation_rate: Option<f64>,
    pub scheme: VariationScheme,
    pub crossover: Crossover,
}

impl VariationConfig {
    pub fn rate_for(&self, n: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / n as f64)
    }

    /// Checks `rate * n ∈ (0, n]`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let rate = self.rate_for(n);
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::Config(format!("mutation rate {rate} outside (0, 1]")));
        }
        Ok(())
    }
}

/// Flips each bit independently with a fixed probability, jumping between
/// flipped positions with geometric skips.
#[derive(Debug, Clone)]
pub struct BitwiseMutation {
    rate: f64,
    skips: Option<Geometric>,
}

impl BitwiseMutation {
    pub fn new(rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::invalid(format!("mutation rate {rate} outside [0, 1]")));
        }
        let skips = if rate > 0.0 && rate < 1.0 {
            Some(Geometric::new(rate).map_err(|e| Error::invalid(e.to_string()))?)
        } else {
            None
        };
        Ok(Self { rate, skips })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn mutate(&self, parent: &BitString, rng: &mut RandomSource) -> BitString {
        let mut child = parent.clone();
        let n = child.len();
        match &self.skips {
            None if self.rate >= 1.0 => (0..n).for_each(|i| child.flip(i)),
            None => {}
            Some(geo) => {
                let mut pos = geo.sample(rng.inner());
                while pos < n as u64 {
                    child.flip(pos as usize);
                    pos += 1 + geo.sample(rng.inner());
                }
            }
        }
        child
    }
}

/// `Q_t`: one offspring per parent slot, each evaluated exactly once.
pub fn generate_offspring(
    parents: &Population,
    cfg: &VariationConfig,
    evaluator: &mut Evaluator,
    rng: &mut RandomSource,
) -> Result<Population> {
    if parents.is_empty() {
        return Err(Error::invalid("cannot vary an empty population"));
    }
    let mutation = BitwiseMutation::new(cfg.rate_for(evaluator.benchmark().n))?;
    let mut offspring = Population::with_capacity(parents.len());
    for i in 0..parents.len() {
        let parent = match cfg.scheme {
            VariationScheme::FairBitwise => &parents[i],
            VariationScheme::UniformParentBitwise => &parents[rng.index(parents.len())],
        };
        offspring.push(evaluator.evaluate(mutation.mutate(parent.genotype(), rng))?);
    }
    Ok(offspring)
}

/// A single offspring from a uniformly chosen parent (steady-state mode).
pub fn generate_one(
    parents: &Population,
    cfg: &VariationConfig,
    evaluator: &mut Evaluator,
    rng: &mut RandomSource,
) -> Result<crate::individual::Individual> {
    if parents.is_empty() {
        return Err(Error::invalid("cannot vary an empty population"));
    }
    let mutation = BitwiseMutation::new(cfg.rate_for(evaluator.benchmark().n))?;
    let parent = &parents[rng.index(parents.len())];
    evaluator.evaluate(mutation.mutate(parent.genotype(), rng))
}
