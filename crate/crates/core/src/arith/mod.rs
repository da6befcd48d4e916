//! Integer and rational primitives shared by every other module.

mod factorization;
mod primality;
pub mod trial;

pub use factorization::Factorization;
pub use primality::{is_prime, is_probable_prime, MillerRabin, DEFAULT_MR_ROUNDS};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_WEIGHT;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub(crate) fn small_mod(n: &BigUint, m: u32) -> u32 {
    (n % m).to_u32().expect("residue fits in u32")
}

/// The Kronecker symbol `(−4 | n)`.
pub fn kronecker_m4(n: &BigUint) -> i8 {
    match small_mod(n, 4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// The Kronecker symbol `(−3 | n)`.
pub fn kronecker_m3(n: &BigUint) -> i8 {
    match small_mod(n, 3) {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

/// Weight-dependent coefficients of the dimension formulas.
///
/// `c2` and `c3` depend only on `k mod 12`; `delta2` flags weight 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightClass {
    pub k: u32,
    #[serde(with = "crate::serde_num::rational")]
    pub c2: ExactRational,
    #[serde(with = "crate::serde_num::rational")]
    pub c3: ExactRational,
    pub delta2: u8,
}

impl WeightClass {
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 || k % 2 == 1 || k > u64::from(MAX_WEIGHT) {
            return Err(Error::InvalidWeight(k));
        }
        let k = k as u32;
        Ok(Self {
            k,
            c2: twelfths(i64::from(c2_twelfths(k))),
            c3: twelfths(i64::from(c3_twelfths(k))),
            delta2: u8::from(k == 2),
        })
    }

    /// `12·c2(k)`, one of `±3`.
    pub fn c2_twelfths(&self) -> i32 {
        c2_twelfths(self.k)
    }

    /// `12·c3(k)`, one of `4, 0, −4`.
    pub fn c3_twelfths(&self) -> i32 {
        c3_twelfths(self.k)
    }

    /// `k − 1` as a big integer.
    pub(crate) fn k_minus_one(&self) -> BigInt {
        BigInt::from(self.k - 1)
    }
}

fn c2_twelfths(k: u32) -> i32 {
    if k.is_multiple_of(4) {
        3
    } else {
        -3
    }
}

fn c3_twelfths(k: u32) -> i32 {
    match k % 3 {
        0 => 4,
        1 => 0,
        _ => -4,
    }
}

/// Validates `k` and returns `(c2(k), c3(k), δ2(k))`.
pub fn weight_class(k: u64) -> Result<WeightClass> {
    WeightClass::new(k)
}

pub(crate) fn twelfths(v: impl Into<BigInt>) -> ExactRational {
    BigRational::new(v.into(), BigInt::from(12))
}

/// Converts an exact value known to be `12·x` into `x`, failing unless `x` is a nonnegative integer.
pub(crate) fn twelfths_to_natural(v: &BigInt, what: &str) -> Result<BigUint> {
    if (v % 12u32) != BigInt::zero() {
        return Err(Error::Inconsistency(format!(
            "{what} evaluated to the non-integer {}",
            twelfths(v.clone())
        )));
    }
    let q: BigInt = v / 12u32;
    q.to_biguint()
        .ok_or_else(|| Error::Inconsistency(format!("{what} evaluated to the negative value {q}")))
}

/// Natural logarithm of a big unsigned integer, accurate for any bit length.
pub(crate) fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
