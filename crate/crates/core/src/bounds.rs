//! Localizing square divisors from one value of `A(k, N)`.
//!
//! With `T` derived from the gap `G − A`, every `d ≥ 27` with `d² | N` makes
//! the cubic `f(x) = −(6/𝓛)x³ + T·x² − (k−1)N` positive, so `d` lies strictly
//! between the two nonnegative roots of `f`. `T0` and `T` are exact; `𝓛`, `θ`
//! and the roots are `f64`.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ln_biguint, ExactRational, WeightClass};
use crate::dims::{require_level_at_least_two, twelve_g};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const ROSSER_SCHOENFELD: f64 = 2.50637;

/// Smallest level at which a square divisor `d ≥ 27` can exist.
pub const MIN_BOUNDS_LEVEL: u64 = 27 * 27;

pub const DEFAULT_RELATIVE_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundsCertificate {
    /// Every `d ≥ 27` with `d² | N` satisfies `x1 < d < x0`.
    Interval,
    /// `f` is negative on the whole positive axis, so no such `d` exists.
    NoLargeSquareDivisor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub k: u32,
    #[serde(rename = "N", with = "crate::serde_num::biguint")]
    pub n: BigUint,
    #[serde(rename = "T0", with = "crate::serde_num::rational")]
    pub t0: ExactRational,
    #[serde(rename = "T", with = "crate::serde_num::rational")]
    pub t: ExactRational,
    pub curly_l: f64,
    pub theta: Option<f64>,
    pub x1: Option<f64>,
    pub x0: Option<f64>,
    pub certificate: BoundsCertificate,
}

/// `(T0, T)` from `a_value = A(k, N)`, without factoring `N`.
///
/// `T0 = 12(Δ + 1/2 − c2(−4|N) − c3(−3|N))` and `T = T0 + 3` when `3 | k`,
/// `T0 + 7` otherwise.
pub fn compute_t(k: u64, n: &BigUint, a_value: &BigUint) -> Result<(ExactRational, ExactRational)> {
    let w = WeightClass::new(k)?;
    require_level_at_least_two(n)?;
    Ok(t_pair(&w, n, a_value))
}

fn t_pair(w: &WeightClass, n: &BigUint, a_value: &BigUint) -> (ExactRational, ExactRational) {
    // 12·Δ = 12·G − 12·A, and the Kronecker terms of 12·G cancel against T0's.
    let twelve_delta = twelve_g(w, n) - BigInt::from(a_value.clone()) * 12;
    let t0 = twelve_delta + 6
        - w.c2_twelfths() * i32::from(crate::arith::kronecker_m4(n))
        - w.c3_twelfths() * i32::from(crate::arith::kronecker_m3(n));
    let t = &t0 + if w.k.is_multiple_of(3) { 3 } else { 7 };
    (BigRational::from_integer(t0), BigRational::from_integer(t))
}

/// `𝓛 = e^γ·log log √N + 2.50637 / log log √N`.
pub fn curly_l(n: &BigUint) -> Result<f64> {
    if n.is_zero() {
        return Err(Error::Domain("N must be positive".into()));
    }
    let loglog = (ln_biguint(n) / 2.0).ln();
    if loglog.is_nan() || loglog <= 0.0 {
        return Err(Error::Domain(format!("log log sqrt({n}) is not positive")));
    }
    Ok(EULER_GAMMA.exp() * loglog + ROSSER_SCHOENFELD / loglog)
}

/// Computes the root interval confining every square divisor `d ≥ 27` of `N`.
pub fn square_divisor_bounds(k: u64, n: &BigUint, a_value: &BigUint) -> Result<BoundsReport> {
    let w = WeightClass::new(k)?;
    if *n < BigUint::from(MIN_BOUNDS_LEVEL) {
        return Err(Error::Domain(format!(
            "N = {n} is below {MIN_BOUNDS_LEVEL}"
        )));
    }
    let (t0, t) = t_pair(&w, n, a_value);
    let l = curly_l(n)?;
    if !t.is_positive() {
        return Err(Error::Inconsistency(format!(
            "T = {t} is not positive, so the arccos argument exceeds 1"
        )));
    }
    let t_f = t.to_f64().expect("finite T");
    let n_f = n.to_f64().unwrap_or(f64::INFINITY);
    // arccos argument is 1 − x
    let x = 486.0 * f64::from(w.k - 1) * n_f / (l * l * t_f.powi(3));
    let mut report = BoundsReport {
        k: w.k,
        n: n.clone(),
        t0,
        t,
        curly_l: l,
        theta: None,
        x1: None,
        x0: None,
        certificate: BoundsCertificate::NoLargeSquareDivisor,
    };
    if x > 2.0 {
        return Ok(report);
    }
    // arccos(1 − x) = 2·asin(√(x/2)) keeps full precision when x is small.
    let theta = 2.0 * (x / 2.0).sqrt().asin();
    let scale = l * t_f / 9.0;
    report.theta = Some(theta);
    report.x0 = Some(scale * (theta / 3.0).cos() + scale / 2.0);
    // cos(θ/3 − 2π/3) + 1/2 = 2·sin(θ/6)·sin(2π/3 − θ/6), free of cancellation near θ = 0.
    report.x1 = Some(scale * 2.0 * (theta / 6.0).sin() * (2.0 * PI / 3.0 - theta / 6.0).sin());
    report.certificate = BoundsCertificate::Interval;
    Ok(report)
}

impl BoundsReport {
    /// The third (nonpositive) root of the cubic, when the roots are real.
    pub fn negative_root(&self) -> Option<f64> {
        let theta = self.theta?;
        let scale = self.curly_l * self.t.to_f64()? / 9.0;
        Some(scale * ((theta / 3.0 - 4.0 * PI / 3.0).cos() + 0.5))
    }

    /// `f(x)` evaluated in floating point.
    pub fn cubic_at(&self, x: f64) -> f64 {
        let t = self.t.to_f64().unwrap_or(f64::NAN);
        let n = self.n.to_f64().unwrap_or(f64::INFINITY);
        -(6.0 / self.curly_l) * x.powi(3) + t * x * x - f64::from(self.k - 1) * n
    }

    /// Whether `f(d) > 0`.
    ///
    /// `T·d² − (k−1)N` and `6d³` are compared exactly; the only rounding is in
    /// `𝓛` and in one final rational-to-float conversion.
    pub fn cubic_positive_at(&self, d: &BigUint) -> bool {
        let d = BigInt::from(d.clone());
        let quad = &self.t * BigRational::from_integer(&d * &d)
            - BigRational::from_integer(BigInt::from(self.k - 1) * BigInt::from(self.n.clone()));
        if !quad.is_positive() {
            return false;
        }
        let threshold = BigRational::from_integer(6 * &d * &d * &d) / quad;
        threshold.to_f64().is_some_and(|th| self.curly_l > th)
    }

    /// Whether `d` lies strictly inside `(x1, x0)` widened by `relative_margin`.
    pub fn interval_contains(&self, d: &BigUint, relative_margin: f64) -> bool {
        match (self.x1, self.x0, d.to_f64()) {
            (Some(x1), Some(x0), Some(d)) => {
                x1 * (1.0 - relative_margin) < d && d < x0 * (1.0 + relative_margin)
            }
            _ => false,
        }
    }

    /// A candidate `d` survives when it is inside the widened interval and the cubic is positive there.
    pub fn admits(&self, d: &BigUint, relative_margin: f64) -> bool {
        self.interval_contains(d, relative_margin) && self.cubic_positive_at(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::trial::factor_trial;
    use crate::dims::dim_a;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn a(k: u64, v: u64) -> BigUint {
        dim_a(k, &factor_trial(v)).unwrap()
    }

    fn int(v: i64) -> ExactRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn t_examples() {
        assert_eq!(compute_t(2, &n(9), &n(0)).unwrap(), (int(9), int(16)));
        assert_eq!(
            compute_t(2, &n(12493), &a(2, 12493)).unwrap(),
            (int(193), int(200))
        );
        let (t0, t) = compute_t(12, &n(1000), &a(12, 1000)).unwrap();
        assert_eq!(t, t0 + int(3));
    }

    #[test]
    fn t0_close_to_twelve_delta() {
        for v in 2..3000u64 {
            for k in [2u64, 4, 6, 12, 14] {
                let f = factor_trial(v);
                let (t0, t) = compute_t(k, &n(v), &a(k, v)).unwrap();
                let delta = crate::dims::dim_delta(k, &f).unwrap();
                assert!((&t0 - int(12) * delta).abs() <= int(13));
                let gap = &t - &t0;
                assert!(gap == int(3) || gap == int(7));
            }
        }
    }

    #[test]
    fn curly_l_values() {
        let l = curly_l(&n(12493)).unwrap();
        // √N ≈ 111.77, log ≈ 4.7164, log log ≈ 1.5510
        let ll = (12493f64.sqrt()).ln().ln();
        assert!((l - (1.781_072_417_990_198 * ll + 2.50637 / ll)).abs() < 1e-12);
        assert!((l - 4.378).abs() < 1e-3);
        assert!(curly_l(&n(1_000_000)).unwrap() > 0.0);
        assert!(matches!(curly_l(&n(7)), Err(Error::Domain(_))));
        let mut prev = 0.0;
        for v in (729..200_000u64).step_by(97) {
            let l = curly_l(&n(v)).unwrap();
            assert!(l >= prev);
            prev = l;
        }
    }

    #[test]
    fn worked_example_interval() {
        let r = square_divisor_bounds(2, &n(12493), &a(2, 12493)).unwrap();
        assert_eq!(r.certificate, BoundsCertificate::Interval);
        let (x1, x0) = (r.x1.unwrap(), r.x0.unwrap());
        assert!(x1 < 31.0 && 31.0 < x0);
        assert!(x1 > 7.0 && x1 < 9.0, "x1 = {x1}");
        assert!(x0 > 140.0 && x0 < 150.0, "x0 = {x0}");
        assert!(r.cubic_positive_at(&n(31)));
        assert!(r.admits(&n(31), DEFAULT_RELATIVE_MARGIN));
        let x2 = r.negative_root().unwrap();
        assert!(x2 <= 0.0 && 0.0 <= x1 && x1 <= x0);
    }

    #[test]
    fn roots_match_trig_formula_and_solve_cubic() {
        let r = square_divisor_bounds(2, &n(12493), &a(2, 12493)).unwrap();
        let theta = r.theta.unwrap();
        let t = r.t.to_f64().unwrap();
        let scale = r.curly_l * t / 9.0;
        let lit1 = scale * (theta / 3.0 - 2.0 * PI / 3.0).cos() + scale / 2.0;
        assert!((lit1 - r.x1.unwrap()).abs() < 1e-9 * r.x1.unwrap());
        let arg: f64 = 1.0 - 486.0 * 12493.0 / (r.curly_l.powi(2) * t.powi(3));
        assert!((arg.acos() - theta).abs() < 1e-12);
        for root in [r.x0.unwrap(), r.x1.unwrap(), r.negative_root().unwrap()] {
            let scale = 6.0 / r.curly_l * root.abs().powi(3) + t * root * root + 12493.0;
            assert!(r.cubic_at(root).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn smallest_admissible_square() {
        let r = square_divisor_bounds(2, &n(729), &a(2, 729)).unwrap();
        assert_eq!(r.certificate, BoundsCertificate::Interval);
        assert!(r.interval_contains(&n(27), 0.0));
        assert!(r.cubic_positive_at(&n(27)));
    }

    #[test]
    fn squarefree_level_has_no_large_square() {
        let v = 1_000_003u64; // prime
        let r = square_divisor_bounds(2, &n(v), &a(2, v)).unwrap();
        assert_eq!(r.certificate, BoundsCertificate::NoLargeSquareDivisor);
        assert!(r.theta.is_none() && r.x0.is_none());
        assert!(!r.admits(&n(100), DEFAULT_RELATIVE_MARGIN));
    }

    #[test]
    fn rejects_small_levels_and_lies() {
        assert!(matches!(
            square_divisor_bounds(2, &n(728), &n(0)),
            Err(Error::Domain(_))
        ));
        // An absurdly large A makes T negative.
        assert!(matches!(
            square_divisor_bounds(2, &n(12493), &n(100_000)),
            Err(Error::Inconsistency(_))
        ));
    }

    fn t_gap(k: u64, v: u64) -> (ExactRational, ExactRational) {
        use crate::mult::{nu_inf_star, s0_star};
        let f = factor_trial(v);
        let (t0, t) = compute_t(k, &n(v), &a(k, v)).unwrap();
        let rhs = int(k as i64 - 1) * int(v as i64) * (int(1) - s0_star(&f))
            + int(6) * BigRational::from_integer(nu_inf_star(&f).into());
        (t0 - &rhs, t - rhs)
    }

    #[test]
    fn t_inequality_when_three_does_not_divide_k() {
        for v in 2..=10_000u64 {
            for k in [2u64, 4, 8, 10] {
                assert!(t_gap(k, v).1 >= int(0), "k={k} N={v}");
            }
        }
    }

    #[test]
    fn t_inequality_can_fail_when_three_divides_k() {
        // A(6, 7) = 3: T0 = 6 − 3 − 4 = −1, T = 2, but 6·ν∞*(7) = 6.
        let (gap0, gap) = t_gap(6, 7);
        assert_eq!(gap0, int(-7));
        assert_eq!(gap, int(-4));
    }

    #[test]
    fn t0_slack_is_at_most_seven() {
        // T0 − (k−1)N(1 − s0*) − 6ν∞* = −12c2·ν2* − 12c3·ν3*, which is ≥ −3 exactly when c3 = 0.
        for v in 2..=10_000u64 {
            for k in [2u64, 4, 6, 12] {
                let floor = if k % 3 == 1 { -3 } else { -7 };
                assert!(t_gap(k, v).0 >= int(floor), "k={k} N={v}");
            }
        }
    }

    #[test]
    fn t_inequality_holds_with_a_large_square_divisor() {
        for v in (729..=20_000u64).filter(|v| (27..=141u64).any(|d| v % (d * d) == 0)) {
            for k in [2u64, 4, 6, 12] {
                assert!(t_gap(k, v).1 >= int(0), "k={k} N={v}");
            }
        }
    }

    #[test]
    fn report_json_roundtrip() {
        let r = square_divisor_bounds(4, &n(12493), &a(4, 12493)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: BoundsReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
