use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{factor_given_phi_multiple, recover_nu23_star, ReductionOptions, SquarefullSplit};
use crate::arith::{ExactRational, Factorization, WeightClass};
use crate::dims::{require_level, twelve_b_level_one};
use crate::error::{Error, Result};
use crate::mult;

/// Splits `N = E·L` given the true `s0*(N)` and `ν∞*(N)`.
///
/// The denominator `d` of the current `s0*` value is a product of primes
/// dividing `L`, and `d·ν∞*` is a multiple of `φ(d)`, so `d` can be factored.
/// Each prime found is divided out of `N` to its full power together with its
/// contribution to both invariants, until `s0*` reaches 1.
pub fn factor_squarefull_from_invariants<R: Rng + ?Sized>(
    n: &BigUint,
    s0star: &ExactRational,
    nuinfstar: &BigUint,
    rng: &mut R,
    opts: &ReductionOptions,
) -> Result<SquarefullSplit> {
    require_level(n)?;
    if !s0star.is_positive() || s0star > &BigRational::one() {
        return Err(Error::InconsistentInputs(format!(
            "s0* = {s0star} is not in (0, 1]"
        )));
    }
    if nuinfstar.is_zero() {
        return Err(Error::InconsistentInputs("ν∞* must be positive".into()));
    }
    let mut rest = n.clone();
    let mut s = s0star.clone();
    let mut nu = nuinfstar.clone();
    let mut peeled: Vec<(BigUint, u32)> = Vec::new();
    while !s.is_one() {
        let d = s.denom().to_biguint().expect("positive denominator");
        if d.is_one() {
            return Err(Error::InconsistentInputs(format!(
                "s0* reached the integer {s}"
            )));
        }
        let primes =
            factor_given_phi_multiple(&d, &(&d * &nu), rng, opts).map_err(|e| match e {
                Error::NotPhiMultiple(..) => {
                    Error::InconsistentInputs(format!("{} is not a multiple of φ({d})", &d * &nu))
                }
                other => other,
            })?;
        for (p, _) in primes.into_factors() {
            let e = strip(&mut rest, &p);
            if e < 2 {
                return Err(Error::InconsistentInputs(format!(
                    "{p} divides the s0* denominator but {p}^2 does not divide {n}"
                )));
            }
            let part = Factorization::prime_power(p.clone(), e)?;
            s /= mult::s0_star(&part);
            let (q, r) = nu.div_rem(&mult::nu_inf_star(&part));
            if !r.is_zero() {
                return Err(Error::InconsistentInputs(format!(
                    "ν∞* is not divisible by ν∞*({part})"
                )));
            }
            nu = q;
            peeled.push((p, e));
        }
        if s > BigRational::one() {
            return Err(Error::InconsistentInputs(format!(
                "s0* grew past 1 after peeling, to {s}"
            )));
        }
    }
    if !nu.is_one() {
        return Err(Error::InconsistentInputs(format!(
            "ν∞* left over as {nu} with s0* = 1"
        )));
    }
    let split = SquarefullSplit {
        e: rest,
        l: Factorization::from_unsorted(peeled),
    };
    if &split.value() != n {
        return Err(Error::Inconsistency(format!(
            "E·L does not recompose to {n}"
        )));
    }
    Ok(split)
}

/// Removes every factor `p` from `rest` and returns the exponent removed.
fn strip(rest: &mut BigUint, p: &BigUint) -> u32 {
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        *rest = q;
        e += 1;
    }
}

/// Splits `N = E·L` from `a1 = A(k1, N)` and `a2 = A(k2, N)`.
///
/// With `A*(k, N) = A(k, N) − c2(k)ν2*(N) − c3(k)ν3*(N)` the two values give
/// the linear system `A*(ki, N) = (ki−1)/12·N·s0*(N) − ν∞*(N)/2`.
pub fn factor_squarefull_two_values<R: Rng + ?Sized>(
    n: &BigUint,
    k1: u64,
    a1: &BigUint,
    k2: u64,
    a2: &BigUint,
    rng: &mut R,
    opts: &ReductionOptions,
) -> Result<SquarefullSplit> {
    require_level(n)?;
    let (w1, w2) = (WeightClass::new(k1)?, WeightClass::new(k2)?);
    if k1 == k2 {
        return Err(Error::Precondition(format!(
            "the two weights must differ, both are {k1}"
        )));
    }
    if n.is_one() {
        for (w, a) in [(&w1, a1), (&w2, a2)] {
            if BigInt::from(a.clone()) * 12 != twelve_b_level_one(w) {
                return Err(Error::InconsistentInputs(format!(
                    "{a} is not A({}, 1)",
                    w.k
                )));
            }
        }
        return Ok(SquarefullSplit {
            e: BigUint::one(),
            l: Factorization::one(),
        });
    }
    let (nu2, nu3) = recover_nu23_star(n, k1, a1)?;
    if recover_nu23_star(n, k2, a2)? != (nu2, nu3) {
        return Err(Error::InconsistentInputs(
            "the two values disagree on ν2*(N), ν3*(N)".into(),
        ));
    }
    let twelve_star = |w: &WeightClass, a: &BigUint| {
        BigInt::from(a.clone()) * 12
            - w.c2_twelfths() * i32::from(nu2)
            - w.c3_twelfths() * i32::from(nu3)
    };
    let (t1, t2) = (twelve_star(&w1, a1), twelve_star(&w2, a2));
    let dk = BigInt::from(k2) - BigInt::from(k1);
    let s0 = BigRational::new(&t2 - &t1, &dk * BigInt::from(n.clone()));
    let nu = BigRational::new(t2 * w1.k_minus_one() - t1 * w2.k_minus_one(), dk * 6);
    if !nu.is_integer() || !nu.is_positive() {
        return Err(Error::InconsistentInputs(format!(
            "solved ν∞* = {nu} is not a positive integer"
        )));
    }
    let nu = nu.to_integer().to_biguint().expect("positive");
    factor_squarefull_from_invariants(n, &s0, &nu, rng, opts)
}
