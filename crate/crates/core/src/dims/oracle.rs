use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{dim_a, dim_b, require_level};
use crate::arith::trial::factor_trial;
use crate::arith::Factorization;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleKind {
    A,
    B,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::A => "A",
            OracleKind::B => "B",
        })
    }
}

/// One answer from a dimension oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OracleSample {
    pub kind: OracleKind,
    pub k: u32,
    #[serde(rename = "N", with = "crate::serde_num::biguint")]
    pub n: BigUint,
    #[serde(with = "crate::serde_num::biguint")]
    pub value: BigUint,
}

/// A black box answering `A(k, N)` and `B(k, N)`.
pub trait DimensionOracle: Send + Sync {
    fn query_a(&self, k: u32, n: &BigUint) -> Result<OracleSample>;
    fn query_b(&self, k: u32, n: &BigUint) -> Result<OracleSample>;

    fn query(&self, kind: OracleKind, k: u32, n: &BigUint) -> Result<OracleSample> {
        match kind {
            OracleKind::A => self.query_a(k, n),
            OracleKind::B => self.query_b(k, n),
        }
    }
}

/// Evaluates the formulas after factoring `N` by brute force.
///
/// Stateless; levels must fit in 64 bits.
#[derive(Clone, Copy, Debug, Default)]
pub struct DefaultOracle;

impl DefaultOracle {
    fn factor(n: &BigUint) -> Result<Factorization> {
        require_level(n)?;
        let small = n
            .to_u64()
            .ok_or_else(|| Error::Oracle(format!("level {n} is beyond desk scale")))?;
        Ok(factor_trial(small))
    }
}

impl DimensionOracle for DefaultOracle {
    fn query_a(&self, k: u32, n: &BigUint) -> Result<OracleSample> {
        let value = dim_a(u64::from(k), &Self::factor(n)?)?;
        Ok(OracleSample {
            kind: OracleKind::A,
            k,
            n: n.clone(),
            value,
        })
    }

    fn query_b(&self, k: u32, n: &BigUint) -> Result<OracleSample> {
        let value = dim_b(u64::from(k), &Self::factor(n)?)?;
        Ok(OracleSample {
            kind: OracleKind::B,
            k,
            n: n.clone(),
            value,
        })
    }
}

/// Serves only the samples it was loaded with.
#[derive(Clone, Debug, Default)]
pub struct TableOracle {
    samples: HashMap<(OracleKind, u32, BigUint), BigUint>,
}

impl TableOracle {
    pub fn new(samples: impl IntoIterator<Item = OracleSample>) -> Self {
        let mut t = Self::default();
        for s in samples {
            t.insert(s);
        }
        t
    }

    pub fn insert(&mut self, s: OracleSample) {
        self.samples.insert((s.kind, s.k, s.n), s.value);
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    fn lookup(&self, kind: OracleKind, k: u32, n: &BigUint) -> Result<OracleSample> {
        self.samples
            .get(&(kind, k, n.clone()))
            .map(|value| OracleSample {
                kind,
                k,
                n: n.clone(),
                value: value.clone(),
            })
            .ok_or_else(|| Error::Oracle(format!("no sample for {kind}({k}, {n})")))
    }
}

impl DimensionOracle for TableOracle {
    fn query_a(&self, k: u32, n: &BigUint) -> Result<OracleSample> {
        self.lookup(OracleKind::A, k, n)
    }

    fn query_b(&self, k: u32, n: &BigUint) -> Result<OracleSample> {
        self.lookup(OracleKind::B, k, n)
    }
}
