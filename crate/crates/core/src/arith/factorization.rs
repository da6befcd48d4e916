use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use super::primality::is_prime;
use crate::error::{Error, Result};

/// A positive integer as an ordered list of `(prime, exponent)` pairs.
///
/// Primes are strictly increasing and every exponent is at least 1; the empty
/// list represents 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FactorList", into = "FactorList")]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization from arbitrary pairs, merging repeated primes.
    pub fn new(pairs: impl IntoIterator<Item = (BigUint, u32)>) -> Result<Self> {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for (p, e) in pairs {
            if e == 0 {
                continue;
            }
            if !is_prime(&p) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
            factors.push((p, e));
        }
        Ok(Self::from_unsorted(factors))
    }

    pub fn prime_power(p: BigUint, e: u32) -> Result<Self> {
        Self::new([(p, e)])
    }

    /// Caller guarantees every listed base is prime.
    pub(crate) fn from_unsorted(mut factors: Vec<(BigUint, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Self { factors: merged }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<(BigUint, u32)> {
        self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * Pow::pow(p, *e))
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// True for 1 and for every integer whose primes all appear at least squared.
    pub fn is_squarefull(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e >= 2)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn euler_phi(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
            acc * Pow::pow(p, *e - 1) * (p - 1u32)
        })
    }

    /// Splits into the squarefree part `E` and the squarefull part `L`.
    pub fn squarefree_squarefull(&self) -> (Self, Self) {
        let (e, l): (Vec<_>, Vec<_>) = self.factors.iter().cloned().partition(|(_, e)| *e == 1);
        (Self { factors: e }, Self { factors: l })
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_unsorted(self.factors.iter().chain(&other.factors).cloned().collect())
    }

    /// The divisor `N / m` for the squarefree `m` whose primes are selected by `mask`.
    pub(crate) fn reduce_by_mask(&self, mask: u64) -> Self {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .filter_map(|(i, (p, e))| {
                let e = if mask >> i & 1 == 1 { e - 1 } else { *e };
                (e > 0).then(|| (p.clone(), e))
            })
            .collect();
        Self { factors }
    }

    /// All positive divisors, unordered.
    pub fn divisors(&self) -> Vec<Self> {
        let mut out = vec![Self::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for d in &out {
                next.push(d.clone());
                for j in 1..=*e {
                    let mut f = d.factors.clone();
                    f.push((p.clone(), j));
                    next.push(Self { factors: f });
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: a list of `[prime, exponent]` pairs with the prime as a decimal string.
#[derive(Serialize, Deserialize)]
struct FactorList(Vec<(String, u32)>);

impl From<Factorization> for FactorList {
    fn from(f: Factorization) -> Self {
        FactorList(
            f.factors
                .into_iter()
                .map(|(p, e)| (p.to_string(), e))
                .collect(),
        )
    }
}

impl TryFrom<FactorList> for Factorization {
    type Error = Error;

    fn try_from(list: FactorList) -> Result<Self> {
        let pairs = list
            .0
            .into_iter()
            .map(|(p, e)| {
                p.parse::<BigUint>()
                    .map(|p| (p, e))
                    .map_err(|_| Error::Precondition(format!("bad prime {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Factorization::new(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(pairs: &[(u64, u32)]) -> Factorization {
        Factorization::new(pairs.iter().map(|&(p, e)| (BigUint::from(p), e))).unwrap()
    }

    #[test]
    fn value_and_display() {
        assert_eq!(Factorization::one().value(), BigUint::one());
        assert_eq!(Factorization::one().to_string(), "1");
        let x = f(&[(31, 2), (13, 1)]);
        assert_eq!(x.value(), BigUint::from(12493u32));
        assert_eq!(x.to_string(), "13·31^2");
    }

    #[test]
    fn merges_and_rejects() {
        assert_eq!(f(&[(2, 1), (3, 1), (2, 2)]), f(&[(2, 3), (3, 1)]));
        assert!(Factorization::new([(BigUint::from(9u32), 1)]).is_err());
        assert!(Factorization::new([(BigUint::one(), 1)]).is_err());
    }

    #[test]
    fn classification() {
        let x = f(&[(2, 3), (3, 2), (5, 1)]);
        assert!(!x.is_squarefree());
        assert!(!x.is_squarefull());
        let (e, l) = x.squarefree_squarefull();
        assert_eq!(e, f(&[(5, 1)]));
        assert_eq!(l, f(&[(2, 3), (3, 2)]));
        assert_eq!(x.mobius(), 0);
        assert_eq!(f(&[(2, 1), (7, 1)]).mobius(), 1);
        assert_eq!(x.euler_phi(), BigUint::from(4u32 * 6 * 4));
        assert!(Factorization::one().is_squarefull());
    }

    #[test]
    fn divisors_of_360() {
        let x = f(&[(2, 3), (3, 2), (5, 1)]);
        let mut ds: Vec<u64> = x
            .divisors()
            .iter()
            .map(|d| u64::try_from(d.value()).unwrap())
            .collect();
        ds.sort_unstable();
        let brute: Vec<u64> = (1..=360).filter(|d| 360 % d == 0).collect();
        assert_eq!(ds, brute);
    }

    #[test]
    fn json_roundtrip() {
        let x = f(&[(13, 1), (31, 2)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[["13",1],["31",2]]"#);
        let back: Factorization = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Factorization>(r#"[["15",1]]"#).is_err());
    }
}
