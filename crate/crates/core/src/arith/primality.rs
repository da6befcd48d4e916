use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub const DEFAULT_MR_ROUNDS: u32 = 64;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Bases 2..=37 are a deterministic witness set for every 64-bit input.
const U64_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Bases 2..=41 are a deterministic witness set below this bound (≈ 3.3·10^24).
const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

fn deterministic_limit() -> &'static BigUint {
    static LIMIT: OnceLock<BigUint> = OnceLock::new();
    LIMIT.get_or_init(|| DETERMINISTIC_LIMIT.parse().expect("valid literal"))
}

/// Miller–Rabin with a configurable number of random rounds.
///
/// Inputs below ≈ 3.3·10^24 are decided with a fixed deterministic witness set,
/// so the randomness only matters above that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MillerRabin {
    pub rounds: u32,
}

impl Default for MillerRabin {
    fn default() -> Self {
        Self {
            rounds: DEFAULT_MR_ROUNDS,
        }
    }
}

impl MillerRabin {
    pub fn new(rounds: u32) -> Self {
        Self { rounds }
    }

    pub fn is_probable_prime<R: Rng + ?Sized>(&self, n: &BigUint, rng: &mut R) -> bool {
        if let Some(small) = n.to_u64() {
            return is_prime_u64(small);
        }
        if SMALL_PRIMES.iter().any(|&p| (n % p).is_zero()) {
            return false;
        }
        if n < deterministic_limit() {
            return SMALL_PRIMES[..13]
                .iter()
                .all(|&a| strong_probable_prime(n, &BigUint::from(a)));
        }
        let two = BigUint::from(2u32);
        let upper = n - 1u32;
        (0..self.rounds).all(|_| {
            let a = rng.gen_biguint_range(&two, &upper);
            strong_probable_prime(n, &a)
        })
    }
}

/// Probable-prime test with the default round count.
pub fn is_probable_prime<R: Rng + ?Sized>(n: &BigUint, rng: &mut R) -> bool {
    MillerRabin::default().is_probable_prime(n, rng)
}

/// Primality check without a caller-supplied randomness source.
///
/// Deterministic below ≈ 3.3·10^24; above that the random bases come from a
/// generator seeded by `n` itself, so the answer is reproducible.
pub fn is_prime(n: &BigUint) -> bool {
    if n.bits() <= 64 || n < deterministic_limit() {
        return MillerRabin::default().is_probable_prime(n, &mut NoRng);
    }
    let mut seed = [0u8; 32];
    for (dst, src) in seed.iter_mut().zip(n.to_bytes_le()) {
        *dst = src;
    }
    let mut rng = ChaCha20Rng::from_seed(seed);
    MillerRabin::default().is_probable_prime(n, &mut rng)
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = u64::from(p);
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'witness: for &a in &U64_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Stand-in generator for the deterministic branches, which never draw.
struct NoRng;

impl rand::RngCore for NoRng {
    fn next_u32(&mut self) -> u32 {
        unreachable!("deterministic branch drew randomness")
    }
    fn next_u64(&mut self) -> u64 {
        unreachable!("deterministic branch drew randomness")
    }
    fn fill_bytes(&mut self, _: &mut [u8]) {
        unreachable!("deterministic branch drew randomness")
    }
    fn try_fill_bytes(&mut self, _: &mut [u8]) -> Result<(), rand::Error> {
        unreachable!("deterministic branch drew randomness")
    }
}
