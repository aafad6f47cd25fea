//! Pareto dominance for maximization.

use crate::error::{Error, Result};

fn check_len<T>(a: &[T], b: &[T]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::ContractViolation(format!(
            "objective vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `a >= b` componentwise.
pub fn weakly_dominates<T: PartialOrd>(a: &[T], b: &[T]) -> Result<bool> {
    check_len(a, b)?;
    Ok(weakly_dominates_unchecked(a, b))
}

/// `a >= b` componentwise with at least one strict inequality.
pub fn dominates<T: PartialOrd>(a: &[T], b: &[T]) -> Result<bool> {
    check_len(a, b)?;
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn weakly_dominates_unchecked<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

#[inline]
pub(crate) fn dominates_unchecked<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dominance_examples() {
        assert!(!dominates(&[3, 2], &[3, 2]).unwrap());
        assert!(dominates(&[3, 2], &[2, 2]).unwrap());
        assert!(!dominates(&[3, 1], &[1, 3]).unwrap());
    }

    #[test]
    fn weak_dominance_examples() {
        let n = 7;
        assert!(weakly_dominates(&[3, 2], &[3, 2]).unwrap());
        assert!(!weakly_dominates(&[3, 2], &[4, 1]).unwrap());
        assert!(!weakly_dominates(&[n, 0], &[0, n]).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(dominates(&[1, 2], &[1]), Err(Error::ContractViolation(_))));
        assert!(weakly_dominates(&[1], &[1, 2]).is_err());
    }

    fn vec3() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..=10, 3)
    }

    proptest! {
        #[test]
        fn strict_implies_weak(a in vec3(), b in vec3()) {
            if dominates(&a, &b).unwrap() {
                prop_assert!(weakly_dominates(&a, &b).unwrap());
            }
        }

        #[test]
        fn irreflexive(a in vec3()) {
            prop_assert!(!dominates(&a, &a).unwrap());
        }

        #[test]
        fn transitive(a in vec3(), b in vec3(), c in vec3()) {
            if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
                prop_assert!(dominates(&a, &c).unwrap());
            }
        }

        #[test]
        fn antisymmetric_on_pairs(a in proptest::collection::vec(0u32..=10, 2), b in proptest::collection::vec(0u32..=10, 2)) {
            prop_assert!(!(dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap()));
        }
    }
}
