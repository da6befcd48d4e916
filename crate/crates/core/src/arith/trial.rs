//! Brute-force factorization: the ground truth behind the default oracle and
//! the test harness. The detectors and reductions never call into this module.

use num_bigint::BigUint;
use num_integer::Integer;

use super::primality::{is_prime_u64, mul_mod_u64};
use super::Factorization;

const TRIAL_LIMIT: u64 = 1_000_000;

/// Factors `n` completely: trial division below 10^6, Pollard–Brent rho above.
///
/// Returns the empty factorization for `n <= 1`.
pub fn factor_trial(n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut n = n;
    if n <= 1 {
        return Factorization::one();
    }
    for p in [2u64, 3, 5] {
        push_valuation(&mut n, p, &mut factors);
    }
    // 30-wheel over the remaining residues
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_LIMIT && p * p <= n {
        push_valuation(&mut n, p, &mut factors);
        p += STEPS[i];
        i = (i + 1) % STEPS.len();
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime_u64(m) {
                factors.push((BigUint::from(m), 1));
                continue;
            }
            let d = pollard_brent(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    Factorization::from_unsorted(factors)
}

fn push_valuation(n: &mut u64, p: u64, out: &mut Vec<(BigUint, u32)>) {
    let mut e = 0;
    while (*n).is_multiple_of(p) {
        *n /= p;
        e += 1;
    }
    if e > 0 {
        out.push((BigUint::from(p), e));
    }
}

/// A nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let r = (n as f64).sqrt() as u64;
    for cand in [r.saturating_sub(1), r, r + 1] {
        if cand > 1 && cand.checked_mul(cand) == Some(n) {
            return cand;
        }
    }
    let f = |x: u64, c: u64| (mul_mod_u64(x, x, n) + c) % n;
    for c in 1.. {
        let (mut y, mut m, mut g, mut r, mut q) = (2u64, 128u64, 1u64, 1u64, 1u64);
        let mut x = 0;
        let mut ys = 0;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y, c);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
            m = m.max(1);
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}
