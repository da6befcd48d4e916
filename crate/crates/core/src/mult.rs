//! The multiplicative functions `s0*`, `ν∞*`, `ν2*`, `ν3*` entering the
//! explicit formula for `A(k, N)`.
//!
//! All of them take a [`Factorization`]: none is computable from `N` alone.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::arith::{kronecker_m3, kronecker_m4, ExactRational, Factorization};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarValues {
    #[serde(with = "crate::serde_num::rational")]
    pub s0_star: ExactRational,
    #[serde(with = "crate::serde_num::biguint")]
    pub nu_inf_star: BigUint,
    pub nu2_star: i8,
    pub nu3_star: i8,
}

/// `Π (1 − p^−2)` over `p^e ∥ N` with `e ≥ 2`.
pub fn s0_star(f: &Factorization) -> ExactRational {
    f.factors()
        .iter()
        .filter(|(_, e)| *e >= 2)
        .fold(BigRational::one(), |acc, (p, _)| {
            let p2 = BigInt::from(p * p);
            acc * BigRational::new(&p2 - 1, p2)
        })
}

/// `N·s0*(N)`, which is always an integer.
pub fn n_times_s0_star(f: &Factorization) -> BigUint {
    f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        if *e == 1 {
            acc * p
        } else {
            acc * Pow::pow(p, e - 2) * (p * p - 1u32)
        }
    })
}

/// `Π (p − 1)·p^⌊e/2 − 1⌋` over `p^e ∥ N` with `e ≥ 2`; equals `φ(D)` for the
/// largest `D` with `D² | N`.
pub fn nu_inf_star(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .filter(|(_, e)| *e >= 2)
        .fold(BigUint::one(), |acc, (p, e)| {
            acc * (p - 1u32) * Pow::pow(p, (e - 2) / 2)
        })
}

/// `ν2*(N)`: `(−4|N)` for squarefree `N`, `−(−4|N/4)` when `N/4` is squarefree, else 0.
pub fn nu2_star(f: &Factorization) -> i8 {
    elliptic_star(f, 2u32, kronecker_m4)
}

/// `ν3*(N)`: `(−3|N)` for squarefree `N`, `−(−3|N/9)` when `N/9` is squarefree, else 0.
pub fn nu3_star(f: &Factorization) -> i8 {
    elliptic_star(f, 3u32, kronecker_m3)
}

fn elliptic_star(f: &Factorization, q: u32, chi: fn(&BigUint) -> i8) -> i8 {
    if f.is_squarefree() {
        return chi(&f.value());
    }
    let q = BigUint::from(q);
    let reduced_squarefree =
        f.factors()
            .iter()
            .all(|(p, e)| if *p == q { *e <= 3 && *e >= 2 } else { *e == 1 });
    if f.exponent_of(&q) >= 2 && reduced_squarefree {
        -chi(&(f.value() / (&q * &q)))
    } else {
        0
    }
}

pub fn star_values(f: &Factorization) -> StarValues {
    StarValues {
        s0_star: s0_star(f),
        nu_inf_star: nu_inf_star(f),
        nu2_star: nu2_star(f),
        nu3_star: nu3_star(f),
    }
}
