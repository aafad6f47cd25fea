//! Ideal/nadir estimation and objective normalization.

use serde::{Deserialize, Serialize};

use crate::dominance::dominates_unchecked;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Achievement scalarization of a translated point for axis `axis`:
/// `max_i z_i / w_i` with `w_axis = 1` and every other weight `off_axis_weight`.
pub fn asf<T: Real>(z: &[T], axis: usize, off_axis_weight: T) -> T {
    z.iter()
        .enumerate()
        .map(|(i, &v)| if i == axis { v } else { v / off_axis_weight })
        .fold(T::neg_infinity(), T::max)
}

/// Where each nadir coordinate came from in the last [`NormalizationState::normalize`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NadirSource {
    /// Intercept of the hyperplane through the extreme points.
    Hyperplane,
    /// Maximum over the first front.
    FirstFrontMax,
    /// Maximum over all fronts up to the critical one.
    SelectedFrontsMax,
    /// The range stayed below `epsilon_nad`; `epsilon_nad` itself is the denominator.
    EpsilonFloor,
}

/// Ideal/worst/nadir estimates and extreme points carried across generations.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationState<T> {
    /// Minimum per objective over the current first front.
    pub z_star: Vec<T>,
    /// Running observed maximum per objective. Never shrinks.
    pub z_worst: Vec<T>,
    /// Raw extreme points from the previous call; `None` stands for the
    /// initial all-infinity sentinels.
    pub extreme_points: Option<Vec<Vec<T>>>,
    pub epsilon_nad: T,
    pub asf_weight: T,
    pub z_hat_star: Vec<T>,
    pub z_hat_nad: Vec<T>,
    pub nadir_source: Vec<NadirSource>,
}

impl<T: Real> NormalizationState<T> {
    pub fn new(objectives: usize, epsilon_nad: T, asf_weight: T) -> Self {
        Self {
            z_star: vec![T::infinity(); objectives],
            z_worst: vec![T::neg_infinity(); objectives],
            extreme_points: None,
            epsilon_nad,
            asf_weight,
            z_hat_star: vec![T::zero(); objectives],
            z_hat_nad: vec![T::one(); objectives],
            nadir_source: vec![NadirSource::FirstFrontMax; objectives],
        }
    }

    pub fn objectives(&self) -> usize {
        self.z_star.len()
    }

    /// Forget everything observed so far.
    pub fn reset(&mut self) {
        *self = Self::new(self.objectives(), self.epsilon_nad, self.asf_weight);
    }

    /// Normalize `points` (the union of fronts `F_1..F_{i*}`, in the caller's
    /// tie-breaking order). `first_front` lists the positions of `F_1` members.
    ///
    /// Returns `f^n(x)` for every point and updates the carried state.
    pub fn normalize(&mut self, points: &[Vec<T>], first_front: &[usize]) -> Result<Vec<Vec<T>>> {
        let m = self.objectives();
        if points.is_empty() || first_front.is_empty() {
            return Err(Error::invalid("normalization needs a non-empty first front"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != m) {
            return Err(Error::ContractViolation(format!(
                "objective vector of length {} in a {m}-objective normalization",
                p.len()
            )));
        }

        for j in 0..m {
            self.z_star[j] = first_front
                .iter()
                .map(|&i| points[i][j])
                .fold(T::infinity(), T::min);
            for p in points {
                self.z_worst[j] = self.z_worst[j].max(p[j]);
            }
        }
        let ideal = self.z_star.clone();

        let extremes = self.extreme_points_from(points, first_front, &ideal);
        let mut nadir = vec![T::zero(); m];
        let mut source = vec![NadirSource::Hyperplane; m];

        let hyperplane_ok = match hyperplane_intercepts(&extremes, &ideal) {
            Some(intercepts) => {
                let mut ok = true;
                for j in 0..m {
                    let candidate = ideal[j] + intercepts[j];
                    if intercepts[j] >= self.epsilon_nad && candidate <= self.z_worst[j] {
                        nadir[j] = candidate;
                    } else {
                        ok = false;
                        break;
                    }
                }
                ok
            }
            None => false,
        };
        if !hyperplane_ok {
            for j in 0..m {
                nadir[j] = first_front
                    .iter()
                    .map(|&i| points[i][j])
                    .fold(T::neg_infinity(), T::max);
                source[j] = NadirSource::FirstFrontMax;
            }
        }

        let mut denominators = vec![T::zero(); m];
        for j in 0..m {
            if nadir[j] < ideal[j] + self.epsilon_nad {
                nadir[j] = points.iter().map(|p| p[j]).fold(T::neg_infinity(), T::max);
                source[j] = NadirSource::SelectedFrontsMax;
            }
            denominators[j] = nadir[j] - ideal[j];
            if denominators[j] < self.epsilon_nad {
                denominators[j] = self.epsilon_nad;
                source[j] = NadirSource::EpsilonFloor;
            }
        }

        self.extreme_points = Some(extremes);
        self.z_hat_star = ideal.clone();
        self.z_hat_nad = nadir;
        self.nadir_source = source;

        let out: Vec<Vec<T>> = points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&ideal)
                    .zip(&denominators)
                    .map(|((&v, &lo), &d)| (v - lo) / d)
                    .collect()
            })
            .collect();
        if out.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::ContractViolation(format!(
                "non-finite normalized value (ideal {ideal:?}, denominators {denominators:?})"
            )));
        }
        Ok(out)
    }

    /// For each axis, the ASF minimizer over the first front followed by the
    /// stored extreme points that no first-front member dominates. Ties go to
    /// the first candidate.
    fn extreme_points_from(&self, points: &[Vec<T>], first_front: &[usize], ideal: &[T]) -> Vec<Vec<T>> {
        let m = ideal.len();
        let front: Vec<&Vec<T>> = first_front.iter().map(|&i| &points[i]).collect();
        let previous = self
            .extreme_points
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .filter(|e| !front.iter().any(|f| dominates_unchecked(f.as_slice(), e.as_slice())));
        let candidates: Vec<&Vec<T>> = front.iter().copied().chain(previous).collect();
        let mut translated = vec![T::zero(); m];
        (0..m)
            .map(|axis| {
                let mut best: Option<(T, &Vec<T>)> = None;
                for &cand in &candidates {
                    for j in 0..m {
                        translated[j] = cand[j] - ideal[j];
                    }
                    let score = asf(&translated, axis, self.asf_weight);
                    if best.is_none_or(|(s, _)| score < s) {
                        best = Some((score, cand));
                    }
                }
                best.expect("non-empty candidate set").1.clone()
            })
            .collect()
    }
}

/// Intercepts (relative to `ideal`) of the hyperplane through `extremes`,
/// or `None` if the translated extreme points are linearly dependent.
fn hyperplane_intercepts<T: Real>(extremes: &[Vec<T>], ideal: &[T]) -> Option<Vec<T>> {
    let m = ideal.len();
    let mut a: Vec<Vec<T>> = extremes
        .iter()
        .map(|e| e.iter().zip(ideal).map(|(&v, &lo)| v - lo).collect())
        .collect();
    let mut b = vec![T::one(); m];
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |acc, v| acc.max(v.abs()));
    if !(scale > T::zero()) || !scale.is_finite() {
        return None;
    }
    let tol = scale * T::from_f64_lossy(1e-10);

    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() <= tol {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..m {
            let factor = a[row][col] / a[col][col];
            for k in col..m {
                let delta = factor * a[col][k];
                a[row][k] = a[row][k] - delta;
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = vec![T::zero(); m];
    for row in (0..m).rev() {
        let mut acc = b[row];
        for k in (row + 1)..m {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    let intercepts: Vec<T> = x.iter().map(|&v| T::one() / v).collect();
    intercepts.iter().all(|v| v.is_finite()).then_some(intercepts)
}
