use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::arith::{kronecker_m3, kronecker_m4, small_mod, WeightClass};
use crate::dims::{require_level_at_least_two, twelve_g};
use crate::error::Result;

/// Levels below this are decided by divisibility alone.
const DIRECT_LOOKUP_BELOW: u32 = 38;

/// `(ν2*(N), ν3*(N))` from `a_value = A(k, N)`.
///
/// Uses only the residues of `N` modulo 8 and 27, the squarefree criterion
/// `A(k, N) = G(k, N)`, and the closed forms that `A(k, N)` takes when `N/4`
/// or `N/9` is squarefree.
pub fn recover_nu23_star(n: &BigUint, k: u64, a_value: &BigUint) -> Result<(i8, i8)> {
    require_level_at_least_two(n)?;
    let w = WeightClass::new(k)?;
    if let Some(small) = n.to_u32().filter(|v| *v < DIRECT_LOOKUP_BELOW) {
        return Ok(direct_lookup(small));
    }
    let twelve_a = BigInt::from(a_value.clone()) * 12;
    let div4 = small_mod(n, 4) == 0;
    let div9 = small_mod(n, 9) == 0;
    if !div4 && !div9 {
        // Any square factor is p² with p ≥ 5, which kills both values.
        return Ok(if twelve_a == twelve_g(&w, n) {
            (kronecker_m4(n), kronecker_m3(n))
        } else {
            (0, 0)
        });
    }
    if div9 {
        let nu3 = if small_mod(n, 27) == 0 {
            0
        } else {
            let chi = kronecker_m3(&(n / 9u32));
            // 108·A = 8(k−1)N − 108 − 9·(12·c3)·(−3|N/9)
            let rhs = w.k_minus_one() * BigInt::from(n.clone()) * 8
                - 108
                - 9 * w.c3_twelfths() * i32::from(chi);
            if BigInt::from(a_value.clone()) * 108 == rhs {
                -chi
            } else {
                0
            }
        };
        return Ok((0, nu3));
    }
    let nu2 = if small_mod(n, 8) == 0 {
        0
    } else {
        let chi = kronecker_m4(&(n / 4u32));
        // 48·A = 3(k−1)N − 24 − 4·(12·c2)·(−4|N/4)
        let rhs = w.k_minus_one() * BigInt::from(n.clone()) * 3
            - 24
            - 4 * w.c2_twelfths() * i32::from(chi);
        if BigInt::from(a_value.clone()) * 48 == rhs {
            -chi
        } else {
            0
        }
    };
    Ok((nu2, 0))
}

/// Below 38 the only squares to watch for are 4, 9, 25 (and 36 = 4·9).
fn direct_lookup(n: u32) -> (i8, i8) {
    let squarefree = |m: u32| !m.is_multiple_of(4) && !m.is_multiple_of(9) && !m.is_multiple_of(25);
    let chi4 = |m: u32| kronecker_m4(&BigUint::from(m));
    let chi3 = |m: u32| kronecker_m3(&BigUint::from(m));
    if squarefree(n) {
        return (chi4(n), chi3(n));
    }
    let nu2 = if n.is_multiple_of(4) && squarefree(n / 4) {
        -chi4(n / 4)
    } else {
        0
    };
    let nu3 = if n.is_multiple_of(9) && squarefree(n / 9) {
        -chi3(n / 9)
    } else {
        0
    };
    (nu2, nu3)
}
