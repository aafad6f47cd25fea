//! NSGA-III with reference-point niching, NSGA-II comparison variants, the
//! maximum empty interval metric, and an experiment harness for the
//! OneMinMax and LOTZ benchmarks.
//!
//! The numeric core is generic over the scalar type; the aliases below fix it
//! to `f64`, `f32` or exact rationals.

pub mod benchmarks;
pub mod dominance;
pub mod error;
pub mod harness;
pub mod individual;
pub mod lemma_lab;
pub mod metrics;
pub mod nsga2;
pub mod nsga3;
pub mod reference_points;
pub mod rng;
pub mod scalar;
pub mod sorting;
pub mod variation;

use num_rational::Ratio;

pub use benchmarks::{Benchmark, BenchmarkKind, Evaluator};
pub use error::{Error, Result};
pub use individual::{BitString, Individual, ObjectiveVector, Population};
pub use metrics::{mei, mei_opt, theory_bounds, MeiReport, TheoryBounds};
pub use nsga2::Nsga2Variant;
pub use nsga3::{Nsga3Config, Nsga3Survival};
pub use reference_points::ReferencePointSet;
pub use rng::RandomSource;
pub use scalar::{Real, Scalar};
pub use sorting::{fast_nondominated_sort, FrontPartition};
pub use variation::{VariationConfig, VariationScheme};

pub type ReferencePoints = ReferencePointSet<f64>;
pub type ReferencePoints32 = ReferencePointSet<f32>;
pub type ExactReferencePoints = ReferencePointSet<Ratio<i64>>;
pub type Normalizer = nsga3::NormalizationState<f64>;
pub type Survival = Nsga3Survival<f64>;
pub type Survival32 = Nsga3Survival<f32>;
