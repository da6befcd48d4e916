//! Exact dimension formulas.
//!
//! `A(k, N)` comes from its explicit formula in the starred multiplicative
//! functions; `B(k, N)` is its Möbius inverse, `B = Σ_{d|N} μ(N/d)·A(k, d)`,
//! with `A(k, 1) := B(k, 1)` so the convolution `A = Σ_{d|N} B(k, d)` holds at
//! every level. `G` and `H` use only `N mod 12` and `N` itself.
//!
//! Internally every quantity is carried as twelve times its value, which is
//! always an integer.

mod oracle;
mod sharp;

pub use oracle::{DefaultOracle, DimensionOracle, OracleKind, OracleSample, TableOracle};
pub use sharp::{sharp_s0_on_squarefull, sharp_values_at_prime_power, SharpPrimePowerValues};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{
    kronecker_m3, kronecker_m4, twelfths, twelfths_to_natural, ExactRational, Factorization,
    WeightClass,
};
use crate::error::{Error, Result};
use crate::mult;

pub(crate) fn require_level(n: &BigUint) -> Result<()> {
    if n.is_zero() {
        return Err(Error::InvalidLevel("N must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn require_level_at_least_two(n: &BigUint) -> Result<()> {
    if n < &BigUint::from(2u32) {
        return Err(Error::InvalidLevel(format!(
            "N = {n}; N must be at least 2"
        )));
    }
    Ok(())
}

/// `12·G(k, N)`.
pub(crate) fn twelve_g(w: &WeightClass, n: &BigUint) -> BigInt {
    w.k_minus_one() * BigInt::from(n.clone()) - 6
        + w.c2_twelfths() * i32::from(kronecker_m4(n))
        + w.c3_twelfths() * i32::from(kronecker_m3(n))
}

/// `12·B(k, 1) = k − 7 + 12·c2 + 12·c3 + 12·δ2`.
pub(crate) fn twelve_b_level_one(w: &WeightClass) -> BigInt {
    BigInt::from(i64::from(w.k) - 7 + i64::from(w.c2_twelfths()) + i64::from(w.c3_twelfths()))
        + 12 * i32::from(w.delta2)
}

/// `12·A(k, N)`, with `A(k, 1) := B(k, 1)`.
pub(crate) fn twelve_a(w: &WeightClass, f: &Factorization) -> BigInt {
    if f.is_one() {
        return twelve_b_level_one(w);
    }
    w.k_minus_one() * BigInt::from(mult::n_times_s0_star(f))
        - 6 * BigInt::from(mult::nu_inf_star(f))
        + w.c2_twelfths() * i32::from(mult::nu2_star(f))
        + w.c3_twelfths() * i32::from(mult::nu3_star(f))
}

/// `12·B(k, N)` by Möbius inversion over the squarefree cofactors of `N`.
pub(crate) fn twelve_b(w: &WeightClass, f: &Factorization) -> BigInt {
    let omega = f.omega();
    assert!(omega < 64, "more than 63 distinct primes");
    (0..1u64 << omega).fold(BigInt::zero(), |acc, mask| {
        let term = twelve_a(w, &f.reduce_by_mask(mask));
        if mask.count_ones() % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `G(k, N) = (k−1)/12·N − 1/2 + c2(k)(−4|N) + c3(k)(−3|N)`. Needs no factorization.
pub fn dim_g(k: u64, n: &BigUint) -> Result<ExactRational> {
    let w = WeightClass::new(k)?;
    require_level(n)?;
    Ok(twelfths(twelve_g(&w, n)))
}

/// `A(k, N)`: the number of weight-`k` newforms of level dividing `N`.
pub fn dim_a(k: u64, f: &Factorization) -> Result<BigUint> {
    let w = WeightClass::new(k)?;
    twelfths_to_natural(&twelve_a(&w, f), &format!("A({k}, {})", f.value()))
}

/// `B(k, N)`: the dimension of the weight-`k` newform space of level `N`.
pub fn dim_b(k: u64, f: &Factorization) -> Result<BigUint> {
    let w = WeightClass::new(k)?;
    twelfths_to_natural(&twelve_b(&w, f), &format!("B({k}, {})", f.value()))
}

/// `B(k, 1) = (k − 7)/12 + c2(k) + c3(k) + δ2(k)`.
pub fn dim_b_level_one(k: u64) -> Result<BigUint> {
    let w = WeightClass::new(k)?;
    twelfths_to_natural(&twelve_b_level_one(&w), &format!("B({k}, 1)"))
}

/// `H(k, N) = G(k, N) − B(k, 1)`. Needs no factorization.
pub fn dim_h(k: u64, n: &BigUint) -> Result<ExactRational> {
    let w = WeightClass::new(k)?;
    require_level(n)?;
    Ok(twelfths(twelve_g(&w, n) - twelve_b_level_one(&w)))
}

/// `Δ(k, N) = G(k, N) − A(k, N)` for `N ≥ 2`.
pub fn dim_delta(k: u64, f: &Factorization) -> Result<ExactRational> {
    let w = WeightClass::new(k)?;
    let n = f.value();
    require_level_at_least_two(&n)?;
    Ok(twelfths(twelve_g(&w, &n) - twelve_a(&w, f)))
}

/// The four summands of `Δ(k, N)` written in the multiplicative functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaTerms {
    /// `(k−1)/12 · N·(1 − s0*(N))`
    #[serde(with = "crate::serde_num::rational")]
    pub volume: ExactRational,
    /// `(ν∞*(N) − 1)/2`
    #[serde(with = "crate::serde_num::rational")]
    pub cusps: ExactRational,
    /// `c2(k)·((−4|N) − ν2*(N))`
    #[serde(with = "crate::serde_num::rational")]
    pub elliptic2: ExactRational,
    /// `c3(k)·((−3|N) − ν3*(N))`
    #[serde(with = "crate::serde_num::rational")]
    pub elliptic3: ExactRational,
}

impl DeltaTerms {
    pub fn total(&self) -> ExactRational {
        &self.volume + &self.cusps + &self.elliptic2 + &self.elliptic3
    }
}

pub fn delta_terms(k: u64, f: &Factorization) -> Result<DeltaTerms> {
    let w = WeightClass::new(k)?;
    let n = f.value();
    require_level_at_least_two(&n)?;
    let n_big = BigInt::from(n.clone());
    let volume = w.k_minus_one() * (&n_big - BigInt::from(mult::n_times_s0_star(f)));
    let cusps = 6 * (BigInt::from(mult::nu_inf_star(f)) - 1);
    let e2 = w.c2_twelfths() * (i32::from(kronecker_m4(&n)) - i32::from(mult::nu2_star(f)));
    let e3 = w.c3_twelfths() * (i32::from(kronecker_m3(&n)) - i32::from(mult::nu3_star(f)));
    Ok(DeltaTerms {
        volume: twelfths(volume),
        cusps: twelfths(cusps),
        elliptic2: twelfths(e2),
        elliptic3: twelfths(e3),
    })
}

/// `A(k, N)` read back as an exact rational, for callers mixing it with `G`.
pub fn dim_a_rational(k: u64, f: &Factorization) -> Result<ExactRational> {
    dim_a(k, f).map(|v| ExactRational::from_integer(v.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::trial::factor_trial;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> ExactRational {
        BigRational::new(a.into(), b.into())
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn ft(v: u64) -> Factorization {
        factor_trial(v)
    }

    #[test]
    fn g_examples() {
        assert_eq!(dim_g(2, &n(9)).unwrap(), q(0, 1));
        assert_eq!(dim_g(2, &n(4)).unwrap(), q(-1, 2));
        assert_eq!(dim_g(2, &n(11)).unwrap(), q(1, 1));
        assert!(matches!(dim_g(3, &n(11)), Err(Error::InvalidWeight(3))));
        assert!(matches!(dim_g(2, &n(0)), Err(Error::InvalidLevel(_))));
    }

    #[test]
    fn a_examples() {
        assert_eq!(dim_a(2, &ft(11)).unwrap(), n(1));
        assert_eq!(dim_a(2, &ft(4)).unwrap(), n(0));
        assert_eq!(dim_a(2, &ft(9)).unwrap(), n(0));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(dim_delta(2, &ft(4)).unwrap(), q(-1, 2));
        assert_eq!(dim_delta(2, &ft(9)).unwrap(), q(0, 1));
        for (k, v) in [
            (2, 8),
            (2, 12),
            (2, 16),
            (2, 20),
            (2, 24),
            (2, 28),
            (4, 4),
            (4, 8),
            (6, 4),
            (8, 4),
        ] {
            assert_eq!(dim_delta(k, &ft(v)).unwrap(), q(1, 2), "Δ({k},{v})");
        }
        assert!(matches!(dim_delta(2, &ft(1)), Err(Error::InvalidLevel(_))));
    }

    #[test]
    fn delta_family_e_p_squared() {
        // N = E·p² with E ≡ 1 (mod 12) squarefree, p > 3 prime not dividing E
        for (e, p) in [(13u64, 31u64), (1, 5), (37, 7), (13 * 37, 11), (61, 61 + 6)] {
            let f = ft(e * p * p);
            if !ft(p).is_prime() || e % p == 0 {
                continue;
            }
            let expected = q(e as i64 + 6 * p as i64 - 19, 12);
            assert_eq!(dim_delta(2, &f).unwrap(), expected, "E={e} p={p}");
        }
    }

    #[test]
    fn delta_terms_sum_to_delta() {
        for v in 2..3000u64 {
            for k in [2u64, 4, 6, 12, 14] {
                let f = ft(v);
                assert_eq!(
                    delta_terms(k, &f).unwrap().total(),
                    dim_delta(k, &f).unwrap()
                );
            }
        }
    }

    #[test]
    fn b_examples() {
        assert_eq!(dim_b(12, &Factorization::one()).unwrap(), n(1));
        assert_eq!(dim_b_level_one(12).unwrap(), n(1));
        assert_eq!(dim_b_level_one(2).unwrap(), n(0));
        assert_eq!(dim_b(2, &ft(22)).unwrap(), n(0));
        assert_eq!(dim_b(2, &ft(13)).unwrap(), n(0));
        // genus of X0(11) and X0(37); newform counts at level 37 and 23
        assert_eq!(dim_b(2, &ft(11)).unwrap(), n(1));
        assert_eq!(dim_b(2, &ft(37)).unwrap(), n(2));
        assert_eq!(dim_b(2, &ft(23)).unwrap(), n(2));
        // the discriminant form is the only level-1 form of weight 12; weight 24 has two
        assert_eq!(dim_b(24, &Factorization::one()).unwrap(), n(2));
    }

    #[test]
    fn h_examples() {
        assert_eq!(dim_h(4, &n(6)).unwrap(), q(1, 1));
        assert_eq!(dim_h(2, &n(4)).unwrap(), q(-1, 2));
        for p in [2u64, 3, 5, 7, 11, 97, 101, 9973] {
            for k in [2u64, 4, 6, 8, 12, 26] {
                let b = dim_b(k, &ft(p)).unwrap();
                assert_eq!(
                    dim_h(k, &n(p)).unwrap(),
                    BigRational::from_integer(b.into())
                );
            }
        }
    }

    #[test]
    fn convolution_identity() {
        for v in 1..=10_000u64 {
            let f = ft(v);
            for k in [2u64, 4, 6, 12] {
                let total: BigUint = f.divisors().iter().map(|d| dim_b(k, d).unwrap()).sum();
                assert_eq!(total, dim_a(k, &f).unwrap(), "k={k} N={v}");
            }
        }
    }

    #[test]
    fn gekeler_direction() {
        for v in 2..20_000u64 {
            let f = ft(v);
            if f.is_squarefree() {
                for k in [2u64, 4, 6, 8, 10, 12, 100] {
                    assert_eq!(dim_delta(k, &f).unwrap(), q(0, 1));
                }
            }
        }
    }

    #[test]
    fn lower_bound_inequality() {
        for v in 2..=10_000u64 {
            let f = ft(v);
            let s0 = mult::s0_star(&f);
            let nu = BigRational::from_integer(mult::nu_inf_star(&f).into());
            for k in [2u64, 4, 6] {
                let rhs =
                    q(k as i64 - 1, 12) * BigRational::from_integer(v.into()) * (q(1, 1) - &s0)
                        + &nu / BigRational::from_integer(2.into())
                        - q(13, 12);
                assert!(dim_delta(k, &f).unwrap() >= rhs, "k={k} N={v}");
            }
        }
    }

    #[test]
    fn g_and_h_denominators_divide_12() {
        for v in 1..500u64 {
            for k in (2..40u64).step_by(2) {
                let g = dim_g(k, &n(v)).unwrap();
                let h = dim_h(k, &n(v)).unwrap();
                assert!((BigInt::from(12) % g.denom()).is_zero());
                assert!((BigInt::from(12) % h.denom()).is_zero());
                assert!(h <= g);
            }
        }
    }
}
