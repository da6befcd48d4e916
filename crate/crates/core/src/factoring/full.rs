use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{factor_given_phi_multiple, factor_squarefull_two_values, ReductionOptions};
use crate::arith::{Factorization, WeightClass};
use crate::dims::sharp_s0_on_squarefull;
use crate::error::{Error, Result};

/// One candidate for `(ν2#(N), ν3#(N), μ(N))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SharpGuess {
    pub nu2_sharp: i128,
    pub nu3_sharp: i128,
    pub mu: i8,
}

/// Candidate sharp values `0, 1, −1, 2, −2, 4, −4, …` up to `±2^⌊log2 N⌋`.
fn candidate(i: usize) -> i128 {
    match i {
        0 => 0,
        _ if i % 2 == 1 => 1i128 << ((i - 1) / 2),
        _ => -(1i128 << ((i - 2) / 2)),
    }
}

/// All guesses for level `N`, ordered by the larger of the two powers of two.
///
/// `mus` lists the values of `μ(N)` to try for each `(ν2#, ν3#)` pair, in order.
pub fn sharp_guesses<'a>(n: &BigUint, mus: &'a [i8]) -> impl Iterator<Item = SharpGuess> + 'a {
    // 2^ℓ ≤ N for ℓ up to bits − 1; capped so the values fit an i128.
    let levels = (n.bits().max(1) as usize).min(126);
    let count = 1 + 2 * levels;
    (0..count)
        .flat_map(|m| {
            (0..=m).flat_map(move |i| {
                if i == m {
                    vec![(m, m)]
                } else {
                    vec![(i, m), (m, i)]
                }
            })
        })
        .flat_map(move |(i, j)| {
            mus.iter().map(move |&mu| SharpGuess {
                nu2_sharp: candidate(i),
                nu3_sharp: candidate(j),
                mu,
            })
        })
}

/// Factors `N` from `a1 = A(k1, N)`, `a2 = A(k2, N)` and `b_value = B(k, N)`.
///
/// After splitting off the squarefull part `L`, each guess for the small sharp
/// values turns `B(k, N)` into a candidate `N·s0#(N)`, hence a candidate
/// `φ(E) = N·s0#(N) / (L·s0#(L))`. Candidates that are not plausible totients
/// are skipped; the rest are tried as `φ`-multiples and the first factorization
/// that verifies wins.
#[allow(clippy::too_many_arguments)]
pub fn full_factor_three_values<R: Rng + ?Sized>(
    n: &BigUint,
    k1: u64,
    a1: &BigUint,
    k2: u64,
    a2: &BigUint,
    k: u64,
    b_value: &BigUint,
    rng: &mut R,
    opts: &ReductionOptions,
) -> Result<Factorization> {
    let w = WeightClass::new(k)?;
    let split = factor_squarefull_two_values(n, k1, a1, k2, a2, rng, opts)?;
    if split.e.is_one() {
        return Ok(split.l);
    }
    let e = &split.e;
    let l_sharp = sharp_s0_on_squarefull(&split.l)?.to_integer();
    if !l_sharp.is_positive() {
        return Err(Error::Inconsistency(format!(
            "L·s0#(L) = {l_sharp} for L = {}",
            split.l
        )));
    }
    // μ(N) vanishes once L > 1 and is ±1 otherwise; it only matters at weight 2.
    let mus: &[i8] = match (w.delta2, split.l.is_one()) {
        (0, _) => &[0],
        (_, true) => &[1, -1, 0],
        (_, false) => &[0, 1, -1],
    };
    let twelve_b = BigInt::from(b_value.clone()) * 12;
    let e_int = BigInt::from(e.clone());
    let two = BigInt::from(2);
    let mut tried: HashSet<BigInt> = HashSet::new();
    for g in sharp_guesses(n, mus) {
        let numerator: BigInt = &twelve_b
            - BigInt::from(g.nu2_sharp) * w.c2_twelfths()
            - BigInt::from(g.nu3_sharp) * w.c3_twelfths()
            - 12 * i32::from(w.delta2) * i32::from(g.mu);
        let (ns0, r) = numerator.div_rem(&w.k_minus_one());
        if !r.is_zero() {
            continue;
        }
        let (phi, r) = ns0.div_rem(&l_sharp);
        if !r.is_zero() || !phi.is_positive() || phi >= e_int {
            continue;
        }
        if e_int > two && phi.is_odd() {
            continue;
        }
        if !tried.insert(phi.clone()) {
            continue;
        }
        let phi = phi.to_biguint().expect("positive");
        let Ok(f) = factor_given_phi_multiple(e, &phi, rng, opts) else {
            continue;
        };
        if !f.is_squarefree() {
            continue;
        }
        let full = f.mul(&split.l);
        if &full.value() == n {
            return Ok(full);
        }
    }
    Err(Error::GuessesExhausted(format!(
        "no guess for the sharp values factored E = {e} ({} totient candidates tried)",
        tried.len()
    )))
}
