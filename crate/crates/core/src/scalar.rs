//! Scalar abstractions.
//!
//! Lattice construction only needs field arithmetic, so it works for exact
//! rationals as well as floats. Everything that takes square roots
//! (association distances, normalization) needs [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num};

/// A number type closed under `+ - * /` that can be built from integers.
pub trait Scalar: Num + FromPrimitive + Copy + PartialOrd + Debug + Send + Sync + 'static {
    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable in scalar type")
    }
}

impl<T> Scalar for T where T: Num + FromPrimitive + Copy + PartialOrd + Debug + Send + Sync + 'static {}

/// Floating-point scalar used by the NSGA-III geometry.
pub trait Real: Scalar + Float {
    fn from_f64_lossy(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite f64 converts")
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Scalar + Float {}
