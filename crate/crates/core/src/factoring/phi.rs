use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rand::Rng;

use super::ReductionOptions;
use crate::arith::Factorization;
use crate::error::{Error, Result};

/// Factors `d` completely given a multiple `m` of `φ(d)`.
///
/// Odd composites that are not prime powers are split by finding a nontrivial
/// square root of 1 among `a^t, a^2t, …` with `m = 2^s·t`; prime powers are
/// caught by exact root extraction. Each split gets `opts.retry_budget`
/// random bases. A base with `a^m ≢ 1` proves `m` is not a valid multiple.
pub fn factor_given_phi_multiple<R: Rng + ?Sized>(
    d: &BigUint,
    m: &BigUint,
    rng: &mut R,
    opts: &ReductionOptions,
) -> Result<Factorization> {
    if d.is_zero() {
        return Err(Error::Precondition("d must be positive".into()));
    }
    if m.is_zero() {
        return Err(Error::Precondition(
            "the phi multiple must be positive".into(),
        ));
    }
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut pending: Vec<(BigUint, u32)> = vec![(d.clone(), 1)];
    while let Some((x, mult)) = pending.pop() {
        if x.is_one() {
            continue;
        }
        if opts.primality.is_probable_prime(&x, rng) {
            primes.push((x, mult));
            continue;
        }
        if x.is_even() {
            let v = x.trailing_zeros().expect("nonzero");
            primes.push((BigUint::from(2u32), mult * v as u32));
            pending.push((x >> v, mult));
            continue;
        }
        if let Some((root, j)) = perfect_power(&x) {
            pending.push((root, mult * j));
            continue;
        }
        let u = split(&x, m, rng, opts.retry_budget)?;
        let v = &x / &u;
        pending.push((u, mult));
        pending.push((v, mult));
    }
    let f = Factorization::from_unsorted(primes);
    if &f.value() != d {
        return Err(Error::Inconsistency(format!(
            "factorization {f} does not recompose to {d}"
        )));
    }
    Ok(f)
}

/// `(r, j)` with `x = r^j` and `j ≥ 2` prime, if any.
fn perfect_power(x: &BigUint) -> Option<(BigUint, u32)> {
    let bits = x.bits() as u32;
    (2..=bits)
        .filter(|j| (2..*j).take_while(|i| i * i <= *j).all(|i| j % i != 0))
        .find_map(|j| {
            let r = x.nth_root(j);
            (Pow::pow(&r, j) == *x).then_some((r, j))
        })
}

/// A nontrivial divisor of the odd composite, non-prime-power `x`.
fn split<R: Rng + ?Sized>(x: &BigUint, m: &BigUint, rng: &mut R, budget: u32) -> Result<BigUint> {
    let one = BigUint::one();
    let x_minus_1 = x - 1u32;
    let s = m.trailing_zeros().unwrap_or(0);
    let t = m >> s;
    'round: for _ in 0..budget {
        let a = rng.gen_biguint_range(&BigUint::from(2u32), &x_minus_1);
        let g = a.gcd(x);
        if !g.is_one() {
            return Ok(g);
        }
        let mut y = a.modpow(&t, x);
        if y.is_one() {
            continue;
        }
        for _ in 0..s {
            if y == x_minus_1 {
                continue 'round;
            }
            let z = (&y * &y) % x;
            if z.is_one() {
                // y is a square root of 1 other than ±1
                return Ok((&y - &one).gcd(x));
            }
            y = z;
        }
        // y = a^m ≠ 1 with gcd(a, x) = 1
        return Err(Error::NotPhiMultiple(m.to_string(), x.to_string()));
    }
    Err(Error::FailureToSplit(x.to_string(), budget))
}
