//! Exact dimension counts for weight-`k` cusp forms on `Γ0(N)` and the
//! reductions they enable.
//!
//! Two counts drive everything here:
//!
//! * `A(k, N)`, the number of weight-`k` Hecke newforms of level dividing `N`,
//! * `B(k, N)`, the dimension of the weight-`k` newform space of level exactly `N`.
//!
//! Both are evaluated exactly from a factorization of `N` ([`dims`]). The
//! comparison functions `G(k, N)` and `H(k, N)` need no factorization at all,
//! and the gaps `G − A` and `H − B` decide squarefreeness and primality
//! ([`detectors`]). A single `A` value also confines every square divisor of
//! `N` to an explicit interval ([`bounds`]). Two `A` values factor the
//! squarefull part of `N`, and one more `B` value factors `N` completely
//! ([`factoring`]).
//!
//! The detectors and reductions only ever see `N` and oracle values. The
//! brute-force [`arith::trial`] factorizer exists to back the default oracle
//! and the test harness.

pub mod arith;
pub mod bounds;
pub mod detectors;
pub mod dims;
pub mod error;
pub mod factoring;
pub mod mult;
pub mod serde_num;
pub mod sweep;

pub use arith::{
    is_prime, is_probable_prime, kronecker_m3, kronecker_m4, weight_class, ExactRational,
    Factorization, MillerRabin, WeightClass,
};
pub use error::{Error, Result};

/// Largest weight accepted by the public API.
pub const MAX_WEIGHT: u32 = 1 << 20;
