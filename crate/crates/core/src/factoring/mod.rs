//! Factoring reductions that consume only `N` and oracle values.
//!
//! * [`factor_given_phi_multiple`]: factor `d` from any multiple of `φ(d)`.
//! * [`recover_nu23_star`]: `ν2*(N)` and `ν3*(N)` from one value of `A`.
//! * [`factor_squarefull_two_values`]: the squarefull part of `N` from two values of `A`.
//! * [`full_factor_three_values`]: all of `N` from two values of `A` and one of `B`.
//!
//! Apart from oracle values, the only facts about `N` these functions use are
//! its divisibility by 4, 8, 9 and 27.

mod full;
mod nu23;
mod phi;
mod squarefull;

pub use full::{full_factor_three_values, sharp_guesses, SharpGuess};
pub use nu23::recover_nu23_star;
pub use phi::factor_given_phi_multiple;
pub use squarefull::{factor_squarefull_from_invariants, factor_squarefull_two_values};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{Factorization, MillerRabin};

pub const DEFAULT_RETRY_BUDGET: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    /// Random bases tried per split before giving up.
    pub retry_budget: u32,
    pub primality: MillerRabin,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        Self {
            retry_budget: DEFAULT_RETRY_BUDGET,
            primality: MillerRabin::default(),
        }
    }
}

/// `N = E·L` with `E` squarefree, `L` squarefull and `gcd(E, L) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarefullSplit {
    #[serde(rename = "E", with = "crate::serde_num::biguint")]
    pub e: BigUint,
    #[serde(rename = "L")]
    pub l: Factorization,
}

impl SquarefullSplit {
    pub fn value(&self) -> BigUint {
        &self.e * self.l.value()
    }
}
