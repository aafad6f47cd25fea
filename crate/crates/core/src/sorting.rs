//! Fast non-dominated sorting.

use crate::dominance::dominates_unchecked;
use crate::error::{Error, Result};

/// Fronts `F_1, F_2, ...` as index sets into the sorted input.
///
/// Indices inside each front are ascending, i.e. in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    pub fn into_fronts(self) -> Vec<Vec<usize>> {
        self.fronts
    }

    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.fronts.iter().map(Vec::len).sum()
    }

    /// Front rank (0-based) for every input index.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.total()];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = r;
            }
        }
        ranks
    }
}

/// Deb's O(M K^2) non-dominated sort over objective vectors (maximization).
pub fn fast_nondominated_sort<T, V>(points: &[V]) -> Result<FrontPartition>
where
    T: PartialOrd,
    V: AsRef<[T]>,
{
    if points.is_empty() {
        return Err(Error::invalid("cannot sort an empty population"));
    }
    let m = points[0].as_ref().len();
    if let Some(bad) = points.iter().position(|p| p.as_ref().len() != m) {
        return Err(Error::ContractViolation(format!(
            "objective vector {bad} has length {}, expected {m}",
            points[bad].as_ref().len()
        )));
    }

    let k = points.len();
    let mut dominated_by_count = vec![0usize; k];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); k];
    for p in 0..k {
        let fp = points[p].as_ref();
        for q in (p + 1)..k {
            let fq = points[q].as_ref();
            if dominates_unchecked(fp, fq) {
                dominates_list[p].push(q);
                dominated_by_count[q] += 1;
            } else if dominates_unchecked(fq, fp) {
                dominates_list[q].push(p);
                dominated_by_count[p] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..k).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominates_list[p] {
                dominated_by_count[q] -= 1;
                if dominated_by_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    Ok(FrontPartition { fronts })
}

/// Minimal 1-based `i*` with `sum_{i <= i*} |F_i| >= capacity`.
pub fn critical_front_index(partition: &FrontPartition, capacity: usize) -> Result<usize> {
    critical_index_from_sizes(partition.fronts.iter().map(Vec::len), capacity)
}

pub(crate) fn critical_index_from_sizes(
    sizes: impl IntoIterator<Item = usize>,
    capacity: usize,
) -> Result<usize> {
    let mut acc = 0;
    for (i, s) in sizes.into_iter().enumerate() {
        acc += s;
        if acc >= capacity {
            return Ok(i + 1);
        }
    }
    Err(Error::invalid(format!(
        "fronts hold {acc} individuals, fewer than the capacity {capacity}"
    )))
}

#[cfg(test)]
pub(crate) mod oracle {
    use crate::dominance::dominates_unchecked;

    /// Peel off non-dominated layers by pairwise comparison.
    pub fn brute_force_fronts<T: PartialOrd, V: AsRef<[T]>>(points: &[V]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = (0..points.len()).collect();
        let mut fronts = Vec::new();
        while !remaining.is_empty() {
            let front: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| {
                    !remaining
                        .iter()
                        .any(|&j| dominates_unchecked(points[j].as_ref(), points[i].as_ref()))
                })
                .collect();
            remaining.retain(|i| !front.contains(i));
            fronts.push(front);
        }
        fronts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{lotz_eval, oneminmax_eval};
    use crate::individual::{random_bitstring, BitString};
    use crate::rng::RandomSource;

    #[test]
    fn oneminmax_population_is_one_front() {
        let mut rng = RandomSource::new(1);
        let pts: Vec<_> = (0..40)
            .map(|_| oneminmax_eval(&random_bitstring(20, &mut rng).unwrap()))
            .collect();
        let p = fast_nondominated_sort(&pts).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.fronts()[0], (0..40).collect::<Vec<_>>());
    }

    #[test]
    fn lotz_strict_dominance_two_fronts() {
        let pts = vec![
            lotz_eval(&BitString::parse("1100").unwrap()),
            lotz_eval(&BitString::parse("1010").unwrap()),
        ];
        assert_eq!(pts[0].values(), &[2, 2]);
        assert_eq!(pts[1].values(), &[1, 1]);
        let p = fast_nondominated_sort(&pts).unwrap();
        assert_eq!(p.fronts(), &[vec![0], vec![1]]);
    }

    #[test]
    fn empty_population_rejected() {
        let pts: Vec<Vec<u32>> = vec![];
        assert!(fast_nondominated_sort(&pts).is_err());
    }

    #[test]
    fn random_lotz_matches_oracle() {
        let mut rng = RandomSource::new(77);
        for trial in 0..300 {
            let n = 2 + trial % 9;
            let size = 1 + rng.index(40);
            let pts: Vec<_> = (0..size)
                .map(|_| lotz_eval(&random_bitstring(n, &mut rng).unwrap()))
                .collect();
            let fast = fast_nondominated_sort(&pts).unwrap();
            assert_eq!(fast.fronts(), oracle::brute_force_fronts(&pts).as_slice());
        }
    }

    #[test]
    fn critical_index_examples() {
        let sizes = [5, 3];
        assert_eq!(critical_index_from_sizes(sizes, 4).unwrap(), 1);
        assert_eq!(critical_index_from_sizes(sizes, 5).unwrap(), 1);
        assert_eq!(critical_index_from_sizes(sizes, 6).unwrap(), 2);
        assert_eq!(critical_index_from_sizes(sizes, 8).unwrap(), 2);
        assert!(critical_index_from_sizes(sizes, 9).is_err());
    }

    #[test]
    fn partition_invariants_hold() {
        let mut rng = RandomSource::new(3);
        let pts: Vec<_> = (0..60)
            .map(|_| lotz_eval(&random_bitstring(8, &mut rng).unwrap()))
            .collect();
        let p = fast_nondominated_sort(&pts).unwrap();
        assert_eq!(p.total(), pts.len());
        let ranks = p.ranks();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                if dominates_unchecked(pts[j].values(), pts[i].values()) {
                    assert!(ranks[j] < ranks[i]);
                }
            }
            if ranks[i] > 0 {
                assert!(p.fronts()[ranks[i] - 1]
                    .iter()
                    .any(|&j| dominates_unchecked(pts[j].values(), pts[i].values())));
            }
        }
    }
}
