//! Bitstring genotypes, objective vectors and population containers.

use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// A point of the search space `{0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::invalid(format!(
                "bitstring length must be at least 2, got {}",
                bits.len()
            )));
        }
        Ok(Self(bits))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// `1^k 0^(n-k)`.
    pub fn ones_then_zeros(k: usize, n: usize) -> Self {
        assert!(k <= n);
        Self((0..n).map(|i| i < k).collect())
    }

    /// Parse a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Uniformly random bitstring of length `n`.
pub fn random_bitstring(n: usize, rng: &mut RandomSource) -> Result<BitString> {
    if n < 2 {
        return Err(Error::invalid(format!("problem size must be at least 2, got {n}")));
    }
    Ok(BitString((0..n).map(|_| rng.bernoulli_half()).collect()))
}

/// Raw objective values, all to be maximized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObjectiveVector(Vec<u32>);

impl ObjectiveVector {
    pub fn new(values: Vec<u32>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }
}

impl AsRef<[u32]> for ObjectiveVector {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for ObjectiveVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// A genotype together with its cached objective vector.
///
/// Only [`crate::benchmarks::Evaluator`] creates these, which keeps the
/// cache coherent and makes every evaluation countable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    genotype: BitString,
    objectives: ObjectiveVector,
}

impl Individual {
    pub(crate) fn from_parts(genotype: BitString, objectives: ObjectiveVector) -> Self {
        Self {
            genotype,
            objectives,
        }
    }

    pub fn genotype(&self) -> &BitString {
        &self.genotype
    }

    pub fn objectives(&self) -> &ObjectiveVector {
        &self.objectives
    }

    /// First objective, the coordinate the MEI metric is defined on.
    pub fn f1(&self) -> u32 {
        self.objectives.get(0)
    }
}

impl AsRef<[u32]> for Individual {
    fn as_ref(&self) -> &[u32] {
        self.objectives.values()
    }
}

/// Ordered multiset of individuals. Duplicates are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Population(Vec<Individual>);

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self(members)
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self(Vec::with_capacity(cap))
    }

    pub fn into_inner(self) -> Vec<Individual> {
        self.0
    }

    pub fn f1_values(&self) -> Vec<u32> {
        self.0.iter().map(Individual::f1).collect()
    }

    /// First objective of the members on the front `f_1 + f_2 = n`.
    pub fn front_f1_values(&self, n: usize) -> Vec<u32> {
        self.0
            .iter()
            .filter(|x| x.objectives().values().iter().sum::<u32>() == n as u32)
            .map(Individual::f1)
            .collect()
    }

    /// Whether `0^n` (f1 = 0) and `1^n` (f1 = n) are present.
    pub fn extremal_coverage(&self, n: usize) -> (bool, bool) {
        let n = n as u32;
        let zeros = self.0.iter().any(|x| x.f1() == 0 && x.objectives().get(1) == n);
        let ones = self.0.iter().any(|x| x.f1() == n && x.objectives().get(1) == 0);
        (zeros, ones)
    }

    /// Append the members of `other`, preserving order.
    pub fn union(mut self, other: Population) -> Population {
        self.0.extend(other.0);
        self
    }
}

impl Deref for Population {
    type Target = Vec<Individual>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for Population {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl FromIterator<Individual> for Population {
    fn from_iter<I: IntoIterator<Item = Individual>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl IntoIterator for Population {
    type Item = Individual;
    type IntoIter = std::vec::IntoIter<Individual>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}
