//! OneMinMax and LOTZ (LeadingOnes, TrailingZeros).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::individual::{BitString, Individual, ObjectiveVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkKind {
    OneMinMax,
    Lotz,
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchmarkKind::OneMinMax => "oneminmax",
            BenchmarkKind::Lotz => "lotz",
        })
    }
}

impl FromStr for BenchmarkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oneminmax" | "omm" => Ok(BenchmarkKind::OneMinMax),
            "lotz" => Ok(BenchmarkKind::Lotz),
            other => Err(Error::invalid(format!("unknown benchmark {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Benchmark {
    pub kind: BenchmarkKind,
    pub n: usize,
}

impl Benchmark {
    pub fn new(kind: BenchmarkKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("problem size must be at least 2, got {n}")));
        }
        Ok(Self { kind, n })
    }

    pub fn one_min_max(n: usize) -> Result<Self> {
        Self::new(BenchmarkKind::OneMinMax, n)
    }

    pub fn lotz(n: usize) -> Result<Self> {
        Self::new(BenchmarkKind::Lotz, n)
    }

    pub fn evaluate(&self, x: &BitString) -> Result<ObjectiveVector> {
        if x.len() != self.n {
            return Err(Error::ContractViolation(format!(
                "bitstring of length {} evaluated on a benchmark of size {}",
                x.len(),
                self.n
            )));
        }
        Ok(match self.kind {
            BenchmarkKind::OneMinMax => oneminmax_eval(x),
            BenchmarkKind::Lotz => lotz_eval(x),
        })
    }

    /// `{(k, n-k) : k = 0..=n}`; identical for both benchmarks.
    pub fn pareto_front(&self) -> Vec<ObjectiveVector> {
        let n = self.n as u32;
        (0..=n).map(|k| ObjectiveVector::new(vec![k, n - k])).collect()
    }

    pub fn is_pareto_optimal(&self, f: &ObjectiveVector) -> bool {
        f.get(0) + f.get(1) == self.n as u32
    }
}

/// (number of ones, number of zeros).
pub fn oneminmax_eval(x: &BitString) -> ObjectiveVector {
    let ones = x.count_ones() as u32;
    ObjectiveVector::new(vec![ones, x.len() as u32 - ones])
}

/// (length of the all-ones prefix, length of the all-zeros suffix).
pub fn lotz_eval(x: &BitString) -> ObjectiveVector {
    let bits = x.bits();
    let leading_ones = bits.iter().take_while(|&&b| b).count() as u32;
    let trailing_zeros = bits.iter().rev().take_while(|&&b| !b).count() as u32;
    ObjectiveVector::new(vec![leading_ones, trailing_zeros])
}

/// Wraps a benchmark and counts fitness evaluations.
#[derive(Debug, Clone)]
pub struct Evaluator {
    benchmark: Benchmark,
    evaluations: u64,
}

impl Evaluator {
    pub fn new(benchmark: Benchmark) -> Self {
        Self {
            benchmark,
            evaluations: 0,
        }
    }

    pub fn benchmark(&self) -> Benchmark {
        self.benchmark
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn evaluate(&mut self, genotype: BitString) -> Result<Individual> {
        let f = self.benchmark.evaluate(&genotype)?;
        self.evaluations += 1;
        Ok(Individual::from_parts(genotype, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::dominates;

    fn all_bitstrings(n: usize) -> impl Iterator<Item = BitString> {
        (0u32..(1 << n)).map(move |m| {
            BitString::new((0..n).map(|i| (m >> i) & 1 == 1).collect()).unwrap()
        })
    }

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    #[test]
    fn oneminmax_examples() {
        assert_eq!(oneminmax_eval(&bs("101")).values(), &[2, 1]);
        assert_eq!(oneminmax_eval(&BitString::zeros(6)).values(), &[0, 6]);
        assert_eq!(oneminmax_eval(&BitString::ones(6)).values(), &[6, 0]);
    }

    #[test]
    fn lotz_examples() {
        assert_eq!(lotz_eval(&bs("1100")).values(), &[2, 2]);
        assert_eq!(lotz_eval(&BitString::zeros(5)).values(), &[0, 5]);
        assert_eq!(lotz_eval(&bs("1011")).values(), &[1, 0]);
    }

    #[test]
    fn pareto_front_enumeration() {
        let f = Benchmark::one_min_max(3).unwrap().pareto_front();
        let got: Vec<_> = f.iter().map(|v| v.values().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
        let f = Benchmark::lotz(2).unwrap().pareto_front();
        let got: Vec<_> = f.iter().map(|v| v.values().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(Benchmark::one_min_max(601).unwrap().pareto_front().len(), 602);
    }

    #[test]
    fn length_contract() {
        let b = Benchmark::one_min_max(4).unwrap();
        assert!(b.evaluate(&bs("101")).is_err());
        assert!(Benchmark::lotz(1).is_err());
    }

    #[test]
    fn oneminmax_sums_to_n_exhaustive() {
        for n in 2..=12 {
            for x in all_bitstrings(n) {
                let f = oneminmax_eval(&x);
                assert_eq!(f.get(0) + f.get(1), n as u32);
            }
        }
    }

    #[test]
    fn lotz_sum_bound_and_equality_exhaustive() {
        for n in 2..=12 {
            for x in all_bitstrings(n) {
                let f = lotz_eval(&x);
                let s = f.get(0) + f.get(1);
                assert!(s <= n as u32);
                let k = f.get(0) as usize;
                let shaped = x == BitString::ones_then_zeros(k, n);
                assert_eq!(s == n as u32, shaped, "x={x}");
            }
        }
    }

    #[test]
    fn pareto_optimality_matches_dominance_oracle() {
        for n in 2..=10 {
            for kind in [BenchmarkKind::OneMinMax, BenchmarkKind::Lotz] {
                let b = Benchmark::new(kind, n).unwrap();
                let values: Vec<_> = all_bitstrings(n).map(|x| b.evaluate(&x).unwrap()).collect();
                for v in &values {
                    let dominated = values.iter().any(|w| dominates(w.values(), v.values()).unwrap());
                    assert_eq!(!dominated, b.is_pareto_optimal(v), "{kind} n={n} v={v:?}");
                }
            }
        }
    }

    #[test]
    fn evaluator_counts() {
        let mut e = Evaluator::new(Benchmark::lotz(4).unwrap());
        e.evaluate(bs("1100")).unwrap();
        e.evaluate(bs("0000")).unwrap();
        assert_eq!(e.evaluations(), 2);
    }
}
