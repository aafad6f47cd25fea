//! Das–Dennis structured reference points on the unit simplex.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// All lattice points `(k_1/p, ..., k_M/p)` with `sum k_i = p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePointSet<T> {
    points: Vec<Vec<T>>,
    lattice: Vec<Vec<usize>>,
    divisions: usize,
    objectives: usize,
}

impl<T: Scalar> ReferencePointSet<T> {
    /// Lexicographic enumeration of the `C(M+p-1, p)` lattice points.
    ///
    /// Coordinates come from integer tuples divided once by `p`, so there is
    /// no accumulated rounding across the lattice.
    pub fn das_dennis(objectives: usize, divisions: usize) -> Result<Self> {
        if objectives < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 objectives, got {objectives}"
            )));
        }
        if divisions < 1 {
            return Err(Error::invalid("need at least one division"));
        }
        let mut lattice = Vec::new();
        let mut tuple = vec![0usize; objectives];
        compositions(&mut lattice, &mut tuple, 0, divisions);

        let p = T::from_count(divisions);
        let points = lattice
            .iter()
            .map(|t| t.iter().map(|&k| T::from_count(k) / p).collect())
            .collect();
        Ok(Self {
            points,
            lattice,
            divisions,
            objectives,
        })
    }

    /// Bi-objective set with exactly `count` points.
    pub fn with_count(count: usize) -> Result<Self> {
        Self::das_dennis(2, divisions_for_count(2, count)?)
    }
}

impl<T> ReferencePointSet<T> {
    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn point(&self, r: usize) -> &[T] {
        &self.points[r]
    }

    /// Integer numerators `k_i` of each point.
    pub fn lattice(&self) -> &[Vec<usize>] {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn divisions(&self) -> usize {
        self.divisions
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }
}

fn compositions(out: &mut Vec<Vec<usize>>, tuple: &mut [usize], depth: usize, left: usize) {
    if depth == tuple.len() - 1 {
        tuple[depth] = left;
        out.push(tuple.to_vec());
        return;
    }
    for k in 0..=left {
        tuple[depth] = k;
        compositions(out, tuple, depth + 1, left - k);
    }
}

/// Divisions `p` giving exactly `count` points. Only `M = 2` is supported,
/// where `N_r = p + 1`.
pub fn divisions_for_count(objectives: usize, count: usize) -> Result<usize> {
    if objectives != 2 {
        return Err(Error::invalid(format!(
            "point-count inversion is only defined for 2 objectives, got {objectives}"
        )));
    }
    if count < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 reference points, got {count}"
        )));
    }
    Ok(count - 1)
}

/// `C(M+p-1, p)`.
pub fn lattice_size(objectives: usize, divisions: usize) -> u64 {
    let (n, k) = ((objectives + divisions - 1) as u64, divisions as u64);
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
