use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::twelve_b;
use crate::arith::{
    is_prime, kronecker_m3, kronecker_m4, ExactRational, Factorization, WeightClass,
};
use crate::error::{Error, Result};

/// Values of the sharp multiplicative functions at one prime power `p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpPrimePowerValues {
    #[serde(with = "crate::serde_num::biguint")]
    pub p: BigUint,
    pub e: u32,
    /// `p^e·s0#(p^e)`
    #[serde(with = "crate::serde_num::bigint")]
    pub x: BigInt,
    /// `ν∞#(p^e)`
    #[serde(with = "crate::serde_num::bigint")]
    pub w: BigInt,
    /// `ν2#(p^e)`
    #[serde(with = "crate::serde_num::bigint")]
    pub y: BigInt,
    /// `ν3#(p^e)`
    #[serde(with = "crate::serde_num::bigint")]
    pub z: BigInt,
}

/// Weights whose `B`-values determine the four sharp values.
///
/// 14 and 26 share `c2` and `c3`, so their difference isolates `x`; the rest
/// of the system is then triangular. None of these is weight 2, so the
/// `δ2·μ` term never enters.
const EXTRACTION_WEIGHTS: [u64; 4] = [12, 14, 16, 26];

/// Solves for `(x, w, y, z)` at `p^e` from `B(k, p^e)` at `k = 12, 14, 16, 26`.
pub fn sharp_values_at_prime_power(p: &BigUint, e: u32) -> Result<SharpPrimePowerValues> {
    if e == 0 {
        return Err(Error::Precondition("exponent must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let f = Factorization::from_unsorted(vec![(p.clone(), e)]);
    let mut b = [
        BigInt::default(),
        BigInt::default(),
        BigInt::default(),
        BigInt::default(),
    ];
    for (slot, k) in b.iter_mut().zip(EXTRACTION_WEIGHTS) {
        // twelve_b is exact; dividing by 12 here keeps the solve in integers.
        let v = twelve_b(&WeightClass::new(k)?, &f);
        *slot = integral(BigRational::new(v, 12.into()), "B")?;
    }
    let [b12, b14, b16, b26] = b;
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let r = |v: &BigInt| BigRational::from_integer(v.clone());

    let x = &b26 - &b14;
    let w = 2 * &x - &b12 - &b14;
    let y = integral(
        q(4, 1) * (r(&b16) - q(5, 4) * r(&x) + q(1, 2) * r(&w)),
        "ν2#",
    )?;
    let z = integral(
        q(3, 1) * (r(&b12) - q(11, 12) * r(&x) + q(1, 2) * r(&w) - q(1, 4) * r(&y)),
        "ν3#",
    )?;
    let values = SharpPrimePowerValues {
        p: p.clone(),
        e,
        x,
        w,
        y,
        z,
    };
    check_properties(&values)?;
    Ok(values)
}

fn integral(v: ExactRational, what: &str) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Inconsistency(format!(
            "{what} solved to the non-integer {v}"
        )))
    }
}

fn check_properties(v: &SharpPrimePowerValues) -> Result<()> {
    let allowed = |t: &BigInt| (-2..=2).map(BigInt::from).any(|a| &a == t);
    if !allowed(&v.y) || !allowed(&v.z) {
        return Err(Error::Inconsistency(format!(
            "ν2#/ν3# at {}^{} outside {{0, ±1, ±2}}: {}, {}",
            v.p, v.e, v.y, v.z
        )));
    }
    if v.e == 1 {
        let expected = (
            BigInt::from(v.p.clone()) - 1,
            BigInt::default(),
            BigInt::from(kronecker_m4(&v.p) - 1),
            BigInt::from(kronecker_m3(&v.p) - 1),
        );
        if (v.x.clone(), v.w.clone(), v.y.clone(), v.z.clone()) != expected {
            return Err(Error::Inconsistency(format!(
                "sharp values at the prime {} violate the prime-level identities",
                v.p
            )));
        }
    }
    Ok(())
}

/// `L·s0#(L)` for squarefull `L`, as the product of the prime-power `x`-values.
pub fn sharp_s0_on_squarefull(l: &Factorization) -> Result<ExactRational> {
    if !l.is_squarefull() {
        return Err(Error::Precondition(format!("{l} is not squarefull")));
    }
    l.factors()
        .iter()
        .try_fold(BigRational::one(), |acc, (p, e)| {
            let v = sharp_values_at_prime_power(p, *e)?;
            Ok(acc * BigRational::from_integer(v.x))
        })
}
