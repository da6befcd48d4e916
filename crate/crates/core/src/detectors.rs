//! Squarefreeness and primality decided from a single oracle value.
//!
//! Inputs are `N`, `k` and one integer; the factorization of `N` is never
//! consulted. Below the thresholds where the comparison is exact (`N < 10`
//! for squarefreeness, `N < 92` for primality) answers come from fixed tables.
//! An oracle value whose sign relation cannot occur for a true dimension is
//! reported as a warning on the verdict, not as an error.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{twelfths, ExactRational, WeightClass};
use crate::dims::{require_level_at_least_two, twelve_b_level_one, twelve_g};
use crate::error::Result;

/// Smallest `N` for which `A = G` is equivalent to squarefreeness.
pub const SQUAREFREE_THRESHOLD: u64 = 10;
/// Smallest `N` for which `B = H` is equivalent to primality.
pub const PRIMALITY_THRESHOLD: u64 = 92;

/// Composite levels where `H(2, N) = B(2, N)`.
pub const WEIGHT_TWO_PRIME_EXCEPTIONS: [u64; 11] = [6, 9, 10, 14, 15, 21, 26, 35, 39, 65, 91];

const PRIMES_BELOW_92: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];
const NON_SQUAREFREE_BELOW_10: [u64; 3] = [4, 8, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrichotomyRelation {
    Equal,
    GGreater,
    GLess,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SquarefreeConclusion {
    Squarefree,
    NotSquarefree,
    Exception,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PrimalityRelation {
    Equal,
    HGreater,
    HLess,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PrimalityConclusion {
    Prime,
    Composite,
    Exception,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyVerdict {
    pub k: u32,
    #[serde(rename = "N", with = "crate::serde_num::biguint")]
    pub n: BigUint,
    #[serde(with = "crate::serde_num::rational")]
    pub g: ExactRational,
    #[serde(with = "crate::serde_num::biguint")]
    pub a_value: BigUint,
    pub relation: TrichotomyRelation,
    pub conclusion: SquarefreeConclusion,
    pub exception_tag: Option<String>,
    pub warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityVerdict {
    pub k: u32,
    #[serde(rename = "N", with = "crate::serde_num::biguint")]
    pub n: BigUint,
    #[serde(with = "crate::serde_num::rational")]
    pub h: ExactRational,
    #[serde(with = "crate::serde_num::biguint")]
    pub b_value: BigUint,
    pub relation: PrimalityRelation,
    pub conclusion: PrimalityConclusion,
    pub exception_tag: Option<String>,
    pub warning: Option<String>,
}

/// Which case of the squarefree trichotomy an observed sign of `G − A` falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrichotomyCase {
    /// `G = A`: squarefree `N`.
    SquarefreeEquality,
    /// `G = A` at `(k, N) = (2, 9)`.
    ExceptionalEquality,
    /// `G < A` at `(k, N) = (2, 4)`.
    Reversed,
    /// `G > A`: every remaining `(k, N)`.
    Generic,
    /// A sign that no truthful oracle can produce for this `(k, N)`.
    Forbidden,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSignReport {
    pub k: u32,
    #[serde(rename = "N", with = "crate::serde_num::biguint")]
    pub n: BigUint,
    #[serde(with = "crate::serde_num::rational")]
    pub delta: ExactRational,
    pub sign: i8,
    pub case: TrichotomyCase,
}

fn small(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

fn compare(lhs: &ExactRational, value: &BigUint) -> Ordering {
    lhs.cmp(&BigRational::from_integer(BigInt::from(value.clone())))
}

fn is_squarefree_small(n: u64) -> bool {
    !NON_SQUAREFREE_BELOW_10.contains(&n)
}

/// Sign of `G − A` a truthful oracle must produce, for `N < 10`.
fn expected_small_relation(k: u32, n: u64) -> TrichotomyRelation {
    match (k, n) {
        (2, 4) => TrichotomyRelation::GLess,
        (2, 9) => TrichotomyRelation::Equal,
        _ if is_squarefree_small(n) => TrichotomyRelation::Equal,
        _ => TrichotomyRelation::GGreater,
    }
}

/// Decides whether `N` is squarefree from `a_value = A(k, N)`.
pub fn squarefree_test(n: &BigUint, k: u64, a_value: &BigUint) -> Result<TrichotomyVerdict> {
    let w = WeightClass::new(k)?;
    require_level_at_least_two(n)?;
    let g = twelfths(twelve_g(&w, n));
    let relation = match compare(&g, a_value) {
        Ordering::Equal => TrichotomyRelation::Equal,
        Ordering::Greater => TrichotomyRelation::GGreater,
        Ordering::Less => TrichotomyRelation::GLess,
    };
    let mut exception_tag = None;
    let mut warning = None;
    let conclusion = match small(n).filter(|&v| v < SQUAREFREE_THRESHOLD) {
        Some(v) => {
            let expected = expected_small_relation(w.k, v);
            if relation != expected {
                warning = Some(format!(
                    "oracle value {a_value} gives {relation:?} but A({}, {v}) must give {expected:?}",
                    w.k
                ));
            }
            match (w.k, v) {
                (2, 4) => {
                    exception_tag = Some("G_LESS_AT_K2_N4".to_owned());
                    SquarefreeConclusion::Exception
                }
                (2, 9) => {
                    exception_tag = Some("EQUAL_AT_K2_N9".to_owned());
                    SquarefreeConclusion::Exception
                }
                _ if is_squarefree_small(v) => SquarefreeConclusion::Squarefree,
                _ => SquarefreeConclusion::NotSquarefree,
            }
        }
        None => {
            if relation == TrichotomyRelation::GLess {
                warning = Some(format!(
                    "oracle value {a_value} exceeds G({}, {n}) = {g}, impossible for N >= 10",
                    w.k
                ));
            }
            if relation == TrichotomyRelation::Equal {
                SquarefreeConclusion::Squarefree
            } else {
                SquarefreeConclusion::NotSquarefree
            }
        }
    };
    Ok(TrichotomyVerdict {
        k: w.k,
        n: n.clone(),
        g,
        a_value: a_value.clone(),
        relation,
        conclusion,
        exception_tag,
        warning,
    })
}

fn is_prime_small(n: u64) -> bool {
    PRIMES_BELOW_92.contains(&n)
}

fn is_equal_at_composite(k: u32, n: u64) -> bool {
    (k == 4 && n == 6) || (k == 2 && WEIGHT_TWO_PRIME_EXCEPTIONS.contains(&n))
}

fn expected_small_primality(k: u32, n: u64) -> PrimalityRelation {
    if k == 2 && n == 4 {
        PrimalityRelation::HLess
    } else if is_prime_small(n) || is_equal_at_composite(k, n) {
        PrimalityRelation::Equal
    } else {
        PrimalityRelation::HGreater
    }
}

/// Decides whether `N` is prime from `b_value = B(k, N)`.
pub fn primality_test(n: &BigUint, k: u64, b_value: &BigUint) -> Result<PrimalityVerdict> {
    let w = WeightClass::new(k)?;
    require_level_at_least_two(n)?;
    let h = twelfths(twelve_g(&w, n) - twelve_b_level_one(&w));
    let relation = match compare(&h, b_value) {
        Ordering::Equal => PrimalityRelation::Equal,
        Ordering::Greater => PrimalityRelation::HGreater,
        Ordering::Less => PrimalityRelation::HLess,
    };
    let mut exception_tag = None;
    let mut warning = None;
    let conclusion = match small(n).filter(|&v| v < PRIMALITY_THRESHOLD) {
        Some(v) => {
            let expected = expected_small_primality(w.k, v);
            if relation != expected {
                warning = Some(format!(
                    "oracle value {b_value} gives {relation:?} but B({}, {v}) must give {expected:?}",
                    w.k
                ));
            }
            if is_prime_small(v) {
                PrimalityConclusion::Prime
            } else if w.k == 2 && v == 4 {
                exception_tag = Some("H_LESS_AT_K2_N4".to_owned());
                PrimalityConclusion::Exception
            } else if is_equal_at_composite(w.k, v) {
                exception_tag = Some(format!("EQUAL_AT_COMPOSITE_K{}_N{v}", w.k));
                PrimalityConclusion::Exception
            } else {
                PrimalityConclusion::Composite
            }
        }
        None => {
            if relation == PrimalityRelation::HLess {
                warning = Some(format!(
                    "oracle value {b_value} exceeds H({}, {n}) = {h}, impossible for N >= 92",
                    w.k
                ));
            }
            if relation == PrimalityRelation::Equal {
                PrimalityConclusion::Prime
            } else {
                PrimalityConclusion::Composite
            }
        }
    };
    Ok(PrimalityVerdict {
        k: w.k,
        n: n.clone(),
        h,
        b_value: b_value.clone(),
        relation,
        conclusion,
        exception_tag,
        warning,
    })
}

/// Reports the sign of `G(k, N) − a_value` and the trichotomy case it lands in.
pub fn delta_sign_classifier(n: &BigUint, k: u64, a_value: &BigUint) -> Result<DeltaSignReport> {
    let w = WeightClass::new(k)?;
    require_level_at_least_two(n)?;
    let delta = twelfths(twelve_g(&w, n) - BigInt::from(a_value.clone()) * 12);
    let sign = match delta.cmp(&BigRational::default()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    let at = |kk: u32, nn: u32| w.k == kk && *n == BigUint::from(nn);
    let case = match sign {
        0 if at(2, 9) => TrichotomyCase::ExceptionalEquality,
        0 if at(2, 4) => TrichotomyCase::Forbidden,
        0 => match small(n).filter(|&v| v < SQUAREFREE_THRESHOLD) {
            Some(v) if !is_squarefree_small(v) => TrichotomyCase::Forbidden,
            _ => TrichotomyCase::SquarefreeEquality,
        },
        -1 if at(2, 4) => TrichotomyCase::Reversed,
        -1 => TrichotomyCase::Forbidden,
        _ => match small(n).filter(|&v| v < SQUAREFREE_THRESHOLD) {
            Some(v) if is_squarefree_small(v) || at(2, 9) || at(2, 4) => TrichotomyCase::Forbidden,
            _ => TrichotomyCase::Generic,
        },
    };
    Ok(DeltaSignReport {
        k: w.k,
        n: n.clone(),
        delta,
        sign,
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::trial::factor_trial;
    use crate::dims::{dim_a, dim_b};

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn a(k: u64, v: u64) -> BigUint {
        dim_a(k, &factor_trial(v)).unwrap()
    }

    fn b(k: u64, v: u64) -> BigUint {
        dim_b(k, &factor_trial(v)).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let v = squarefree_test(&n(11), 2, &n(1)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (TrichotomyRelation::Equal, SquarefreeConclusion::Squarefree)
        );
        let v = squarefree_test(&n(12), 2, &n(0)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (
                TrichotomyRelation::GGreater,
                SquarefreeConclusion::NotSquarefree
            )
        );
        let v = squarefree_test(&n(4), 2, &n(0)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (TrichotomyRelation::GLess, SquarefreeConclusion::Exception)
        );
        assert!(v.exception_tag.is_some() && v.warning.is_none());
        let v = squarefree_test(&n(9), 2, &n(0)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (TrichotomyRelation::Equal, SquarefreeConclusion::Exception)
        );
    }

    #[test]
    fn small_levels_use_the_table() {
        for v in 2..10u64 {
            for k in [2u64, 4, 6, 8, 10, 12, 14] {
                let verdict = squarefree_test(&n(v), k, &a(k, v)).unwrap();
                assert!(
                    verdict.warning.is_none(),
                    "k={k} N={v}: {:?}",
                    verdict.warning
                );
                let sf = factor_trial(v).is_squarefree();
                match verdict.conclusion {
                    SquarefreeConclusion::Squarefree => assert!(sf),
                    SquarefreeConclusion::NotSquarefree => assert!(!sf),
                    SquarefreeConclusion::Exception => assert!(k == 2 && (v == 4 || v == 9)),
                }
            }
        }
    }

    #[test]
    fn lying_oracle_is_flagged() {
        // A(2, 12) = 0; claiming 5 puts the value above G.
        let v = squarefree_test(&n(12), 2, &n(5)).unwrap();
        assert_eq!(v.relation, TrichotomyRelation::GLess);
        assert!(v.warning.is_some());
        let v = squarefree_test(&n(6), 2, &n(7)).unwrap();
        assert!(v.warning.is_some());
        let v = primality_test(&n(97), 2, &n(1000)).unwrap();
        assert_eq!(v.relation, PrimalityRelation::HLess);
        assert!(v.warning.is_some());
    }

    #[test]
    fn primality_examples() {
        let v = primality_test(&n(97), 2, &b(2, 97)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (PrimalityRelation::Equal, PrimalityConclusion::Prime)
        );
        let v = primality_test(&n(91), 2, &b(2, 91)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (PrimalityRelation::Equal, PrimalityConclusion::Exception)
        );
        let v = primality_test(&n(95), 2, &b(2, 95)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (PrimalityRelation::HGreater, PrimalityConclusion::Composite)
        );
        let v = primality_test(&n(4), 2, &b(2, 4)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (PrimalityRelation::HLess, PrimalityConclusion::Exception)
        );
        let v = primality_test(&n(6), 4, &b(4, 6)).unwrap();
        assert_eq!(
            (v.relation, v.conclusion),
            (PrimalityRelation::Equal, PrimalityConclusion::Exception)
        );
    }

    #[test]
    fn small_primality_tables_agree_with_oracle() {
        for v in 2..PRIMALITY_THRESHOLD {
            for k in [2u64, 4, 6, 8, 12, 14] {
                let verdict = primality_test(&n(v), k, &b(k, v)).unwrap();
                assert!(
                    verdict.warning.is_none(),
                    "k={k} N={v}: {:?}",
                    verdict.warning
                );
            }
        }
    }

    #[test]
    fn classifier_cases() {
        let r = delta_sign_classifier(&n(9), 2, &a(2, 9)).unwrap();
        assert_eq!((r.sign, r.case), (0, TrichotomyCase::ExceptionalEquality));
        let r = delta_sign_classifier(&n(4), 2, &a(2, 4)).unwrap();
        assert_eq!((r.sign, r.case), (-1, TrichotomyCase::Reversed));
        let r = delta_sign_classifier(&n(4), 4, &a(4, 4)).unwrap();
        assert_eq!((r.sign, r.case), (1, TrichotomyCase::Generic));
        let r = delta_sign_classifier(&n(30), 2, &a(2, 30)).unwrap();
        assert_eq!((r.sign, r.case), (0, TrichotomyCase::SquarefreeEquality));
        let r = delta_sign_classifier(&n(30), 2, &n(100)).unwrap();
        assert_eq!(r.case, TrichotomyCase::Forbidden);
    }

    #[test]
    fn validates_inputs() {
        assert!(squarefree_test(&n(1), 2, &n(0)).is_err());
        assert!(squarefree_test(&n(10), 5, &n(0)).is_err());
        assert!(primality_test(&n(10), u64::from(crate::MAX_WEIGHT) + 2, &n(0)).is_err());
    }

    #[test]
    fn verdict_json_roundtrip() {
        let v = squarefree_test(&n(12), 2, &n(0)).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains(r#""relation":"G_GREATER""#));
        assert_eq!(serde_json::from_str::<TrichotomyVerdict>(&s).unwrap(), v);
        let p = primality_test(&n(91), 2, &b(2, 91)).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<PrimalityVerdict>(&s).unwrap(), p);
    }
}
