//! Association of normalized points to reference directions.

use crate::reference_points::ReferencePointSet;
use crate::rng::RandomSource;
use crate::scalar::Real;

/// `rp(x)` and the perpendicular distance of each point to its direction.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationResult<T> {
    pub assignments: Vec<usize>,
    pub distances: Vec<T>,
}

impl<T> AssociationResult<T> {
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }
}

/// Distance from `point` to the line through the origin along `direction`.
pub fn perpendicular_distance<T: Real>(point: &[T], direction: &[T]) -> T {
    let (dot, ww, pp) = point.iter().zip(direction).fold(
        (T::zero(), T::zero(), T::zero()),
        |(d, w, p), (&x, &r)| (d + x * r, w + r * r, p + x * x),
    );
    (pp - dot * dot / ww).max(T::zero()).sqrt()
}

/// Assign every point to the reference direction at minimal perpendicular
/// distance. Distances within `tie_tolerance` of the minimum count as ties,
/// broken uniformly at random.
pub fn associate<T: Real>(
    normalized: &[Vec<T>],
    refs: &ReferencePointSet<T>,
    tie_tolerance: T,
    rng: &mut RandomSource,
) -> AssociationResult<T> {
    let norms: Vec<T> = refs
        .points()
        .iter()
        .map(|w| w.iter().fold(T::zero(), |acc, &c| acc + c * c))
        .collect();
    let mut assignments = Vec::with_capacity(normalized.len());
    let mut distances = Vec::with_capacity(normalized.len());
    let mut sq = vec![T::zero(); refs.len()];
    let mut ties = Vec::new();

    for p in normalized {
        let pp = p.iter().fold(T::zero(), |acc, &x| acc + x * x);
        let mut best = T::infinity();
        for (r, (w, &ww)) in refs.points().iter().zip(&norms).enumerate() {
            let dot = p.iter().zip(w).fold(T::zero(), |acc, (&x, &c)| acc + x * c);
            let d2 = (pp - dot * dot / ww).max(T::zero());
            sq[r] = d2;
            best = best.min(d2);
        }
        let d_min = best.sqrt();
        // d <= d_min + tol  <=>  d^2 <= (d_min + tol)^2
        let cutoff = ((d_min + tie_tolerance) * (d_min + tie_tolerance)).max(best);
        ties.clear();
        ties.extend((0..refs.len()).filter(|&r| sq[r] <= cutoff));
        let r = if ties.len() == 1 {
            ties[0]
        } else {
            ties[rng.index(ties.len())]
        };
        assignments.push(r);
        distances.push(sq[r].sqrt());
    }
    AssociationResult {
        assignments,
        distances,
    }
}
