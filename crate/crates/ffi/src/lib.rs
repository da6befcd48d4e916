//! C ABI over `modfactor`.
//!
//! Big integers cross the boundary as NUL-terminated decimal strings. Every
//! fallible call returns an [`MfStatus`]; on failure a description is kept per
//! thread and can be read with [`mf_last_error_message`]. Strings handed out by
//! the library are released with [`mf_string_free`], factorizations with
//! [`mf_factorization_free`] and oracles with [`mf_oracle_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modfactor::bounds::{square_divisor_bounds, BoundsCertificate};
use modfactor::detectors::{
    primality_test, squarefree_test, PrimalityConclusion, SquarefreeConclusion,
};
use modfactor::dims::{
    dim_g, dim_h, DefaultOracle, DimensionOracle, OracleKind, OracleSample, TableOracle,
};
use modfactor::factoring::{
    factor_given_phi_multiple, factor_squarefull_two_values, full_factor_three_values,
    ReductionOptions,
};
use modfactor::serde_num::format_rational;
use modfactor::{Error, Factorization};
use num_bigint::BigUint;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfStatus {
    Ok = 0,
    /// A null pointer, bad UTF-8 or a malformed number.
    InvalidArgument,
    InvalidWeight,
    InvalidLevel,
    Precondition,
    Inconsistency,
    InconsistentInputs,
    Domain,
    NotPhiMultiple,
    FailureToSplit,
    GuessesExhausted,
    Oracle,
    /// The library panicked; this is a bug.
    Internal,
}

impl From<&Error> for MfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidWeight(_) => MfStatus::InvalidWeight,
            Error::InvalidLevel(_) => MfStatus::InvalidLevel,
            Error::Precondition(_) => MfStatus::Precondition,
            Error::Inconsistency(_) => MfStatus::Inconsistency,
            Error::InconsistentInputs(_) => MfStatus::InconsistentInputs,
            Error::Domain(_) => MfStatus::Domain,
            Error::NotPhiMultiple(..) => MfStatus::NotPhiMultiple,
            Error::FailureToSplit(..) => MfStatus::FailureToSplit,
            Error::GuessesExhausted(_) => MfStatus::GuessesExhausted,
            Error::Oracle(_) => MfStatus::Oracle,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfDimKind {
    A,
    B,
    G,
    H,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfOracleKind {
    A,
    B,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfSquarefreeConclusion {
    Squarefree,
    NotSquarefree,
    Exception,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfPrimalityConclusion {
    Prime,
    Composite,
    Exception,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfCertificate {
    Interval,
    NoLargeSquareDivisor,
}

/// Floating part of a square-divisor bound. `theta`, `x1` and `x0` are NaN
/// unless `certificate` is `MF_CERTIFICATE_INTERVAL`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct MfBounds {
    pub certificate: MfCertificate,
    pub curly_l: f64,
    pub theta: f64,
    pub x1: f64,
    pub x0: f64,
}

/// Opaque prime factorization.
pub struct MfFactorization(Factorization);

enum OracleImpl {
    Default(DefaultOracle),
    Table(TableOracle),
}

/// Opaque source of `A` and `B` values.
pub struct MfOracle(OracleImpl);

impl MfOracle {
    fn get(&self) -> &dyn DimensionOracle {
        match &self.0 {
            OracleImpl::Default(o) => o,
            OracleImpl::Table(o) => o,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Fail(MfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(MfStatus::from(&e), e.to_string())
    }
}

fn invalid(message: impl Into<String>) -> Fail {
    Fail(MfStatus::InvalidArgument, message.into())
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MfStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            MfStatus::Internal
        }
    }
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_biguint(s: *const c_char, what: &str) -> Result<BigUint, Fail> {
    if s.is_null() {
        return Err(invalid(format!("{what} is null")));
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))?;
    text.trim().parse().map_err(|_| {
        invalid(format!(
            "{what} = {text:?} is not a nonnegative decimal integer"
        ))
    })
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    // SAFETY: checked non-null; the caller promises it is valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| invalid("string contains NUL"))?;
    // SAFETY: checked non-null.
    unsafe { out.write(c.into_raw()) };
    Ok(())
}

fn oracle_ref<'a>(oracle: *const MfOracle) -> Result<&'a MfOracle, Fail> {
    // SAFETY: the caller passes null or a live handle from this library.
    unsafe { oracle.as_ref() }.ok_or_else(|| invalid("oracle is null"))
}

/// The message for the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// An oracle that computes `A` and `B` by factoring `N` (levels below 2^64).
#[no_mangle]
pub extern "C" fn mf_default_oracle_new() -> *mut MfOracle {
    Box::into_raw(Box::new(MfOracle(OracleImpl::Default(DefaultOracle))))
}

/// An empty oracle that serves only values added with [`mf_table_oracle_insert`].
#[no_mangle]
pub extern "C" fn mf_table_oracle_new() -> *mut MfOracle {
    Box::into_raw(Box::new(MfOracle(
        OracleImpl::Table(TableOracle::default()),
    )))
}

/// Adds `value = kind(k, n)` to a table oracle.
///
/// # Safety
/// `oracle` must come from [`mf_table_oracle_new`]; `n` and `value` must be
/// NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn mf_table_oracle_insert(
    oracle: *mut MfOracle,
    kind: MfOracleKind,
    k: u32,
    n: *const c_char,
    value: *const c_char,
) -> MfStatus {
    guard(|| {
        let o = oracle.as_mut().ok_or_else(|| invalid("oracle is null"))?;
        let OracleImpl::Table(table) = &mut o.0 else {
            return Err(invalid("not a table oracle"));
        };
        let kind = match kind {
            MfOracleKind::A => OracleKind::A,
            MfOracleKind::B => OracleKind::B,
        };
        let n = read_biguint(n, "n")?;
        let value = read_biguint(value, "value")?;
        table.insert(OracleSample { kind, k, n, value });
        Ok(())
    })
}

/// Queries `kind(k, n)`; the decimal result is written to `out`.
///
/// # Safety
/// `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_oracle_query(
    oracle: *const MfOracle,
    kind: MfOracleKind,
    k: u32,
    n: *const c_char,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let o = oracle_ref(oracle)?;
        let n = read_biguint(n, "n")?;
        let kind = match kind {
            MfOracleKind::A => OracleKind::A,
            MfOracleKind::B => OracleKind::B,
        };
        let sample = o.get().query(kind, k, &n)?;
        write_string(out, sample.value.to_string())
    })
}

/// Frees an oracle. Null is ignored.
///
/// # Safety
/// `oracle` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mf_oracle_free(oracle: *mut MfOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

/// `A`, `B`, `G` or `H` at `(k, n)`, written to `out` as `"p/q"` or a bare integer.
/// `A` and `B` factor `n` by brute force.
///
/// # Safety
/// `n` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_dim(
    kind: MfDimKind,
    k: u32,
    n: *const c_char,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let n = read_biguint(n, "n")?;
        let value = match kind {
            MfDimKind::A => DefaultOracle.query_a(k, &n)?.value.to_string(),
            MfDimKind::B => DefaultOracle.query_b(k, &n)?.value.to_string(),
            MfDimKind::G => format_rational(&dim_g(u64::from(k), &n)?),
            MfDimKind::H => format_rational(&dim_h(u64::from(k), &n)?),
        };
        write_string(out, value)
    })
}

/// Squarefree detector with `A(k, n)` taken from `oracle`.
///
/// # Safety
/// `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_squarefree_test(
    oracle: *const MfOracle,
    k: u32,
    n: *const c_char,
    out: *mut MfSquarefreeConclusion,
) -> MfStatus {
    guard(|| {
        let o = oracle_ref(oracle)?;
        let n = read_biguint(n, "n")?;
        let a = o.get().query_a(k, &n)?.value;
        let v = squarefree_test(&n, u64::from(k), &a)?;
        write_out(
            out,
            match v.conclusion {
                SquarefreeConclusion::Squarefree => MfSquarefreeConclusion::Squarefree,
                SquarefreeConclusion::NotSquarefree => MfSquarefreeConclusion::NotSquarefree,
                SquarefreeConclusion::Exception => MfSquarefreeConclusion::Exception,
            },
        )
    })
}

/// Primality detector with `B(k, n)` taken from `oracle`.
///
/// # Safety
/// `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_primality_test(
    oracle: *const MfOracle,
    k: u32,
    n: *const c_char,
    out: *mut MfPrimalityConclusion,
) -> MfStatus {
    guard(|| {
        let o = oracle_ref(oracle)?;
        let n = read_biguint(n, "n")?;
        let b = o.get().query_b(k, &n)?.value;
        let v = primality_test(&n, u64::from(k), &b)?;
        write_out(
            out,
            match v.conclusion {
                PrimalityConclusion::Prime => MfPrimalityConclusion::Prime,
                PrimalityConclusion::Composite => MfPrimalityConclusion::Composite,
                PrimalityConclusion::Exception => MfPrimalityConclusion::Exception,
            },
        )
    })
}

/// Interval for the square divisors `d ≥ 27` of `n`, from `A(k, n)` taken from `oracle`.
///
/// # Safety
/// `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_square_divisor_bounds(
    oracle: *const MfOracle,
    k: u32,
    n: *const c_char,
    out: *mut MfBounds,
) -> MfStatus {
    guard(|| {
        let o = oracle_ref(oracle)?;
        let n = read_biguint(n, "n")?;
        let a = o.get().query_a(k, &n)?.value;
        let r = square_divisor_bounds(u64::from(k), &n, &a)?;
        write_out(
            out,
            MfBounds {
                certificate: match r.certificate {
                    BoundsCertificate::Interval => MfCertificate::Interval,
                    BoundsCertificate::NoLargeSquareDivisor => MfCertificate::NoLargeSquareDivisor,
                },
                curly_l: r.curly_l,
                theta: r.theta.unwrap_or(f64::NAN),
                x1: r.x1.unwrap_or(f64::NAN),
                x0: r.x0.unwrap_or(f64::NAN),
            },
        )
    })
}

fn options(retry_budget: u32) -> ReductionOptions {
    ReductionOptions {
        retry_budget,
        ..ReductionOptions::default()
    }
}

fn write_factorization(out: *mut *mut MfFactorization, f: Factorization) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(MfFactorization(f))))
}

/// Factors `d` given a multiple `m` of `φ(d)`.
///
/// # Safety
/// `d` and `m` must be NUL-terminated strings and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_factor_given_phi_multiple(
    d: *const c_char,
    m: *const c_char,
    seed: u64,
    retry_budget: u32,
    out: *mut *mut MfFactorization,
) -> MfStatus {
    guard(|| {
        let d = read_biguint(d, "d")?;
        let m = read_biguint(m, "m")?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let f = factor_given_phi_multiple(&d, &m, &mut rng, &options(retry_budget))?;
        write_factorization(out, f)
    })
}

/// Splits `n = E·L` from `A(k1, n)` and `A(k2, n)` taken from `oracle`.
/// `E` is written as a decimal string, `L` as a factorization.
///
/// # Safety
/// `oracle` must be a live handle, `n` a NUL-terminated string, and both outputs valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn mf_factor_squarefull(
    oracle: *const MfOracle,
    n: *const c_char,
    k1: u32,
    k2: u32,
    seed: u64,
    retry_budget: u32,
    e_out: *mut *mut c_char,
    l_out: *mut *mut MfFactorization,
) -> MfStatus {
    guard(|| {
        let o = oracle_ref(oracle)?.get();
        let n = read_biguint(n, "n")?;
        if e_out.is_null() || l_out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        let a1 = o.query_a(k1, &n)?.value;
        let a2 = o.query_a(k2, &n)?.value;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let split = factor_squarefull_two_values(
            &n,
            u64::from(k1),
            &a1,
            u64::from(k2),
            &a2,
            &mut rng,
            &options(retry_budget),
        )?;
        write_string(e_out, split.e.to_string())?;
        write_factorization(l_out, split.l)
    })
}

/// Factors `n` completely from `A(k1, n)`, `A(k2, n)` and `B(kb, n)` taken from `oracle`.
///
/// # Safety
/// `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn mf_factor_full(
    oracle: *const MfOracle,
    n: *const c_char,
    k1: u32,
    k2: u32,
    kb: u32,
    seed: u64,
    retry_budget: u32,
    out: *mut *mut MfFactorization,
) -> MfStatus {
    guard(|| {
        let o = oracle_ref(oracle)?.get();
        let n = read_biguint(n, "n")?;
        let a1 = o.query_a(k1, &n)?.value;
        let a2 = o.query_a(k2, &n)?.value;
        let b = o.query_b(kb, &n)?.value;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let f = full_factor_three_values(
            &n,
            u64::from(k1),
            &a1,
            u64::from(k2),
            &a2,
            u64::from(kb),
            &b,
            &mut rng,
            &options(retry_budget),
        )?;
        write_factorization(out, f)
    })
}

fn factorization_ref<'a>(f: *const MfFactorization) -> Option<&'a Factorization> {
    // SAFETY: the caller passes null or a live handle from this library.
    unsafe { f.as_ref() }.map(|h| &h.0)
}

/// Number of distinct primes; 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_factorization_len(f: *const MfFactorization) -> usize {
    factorization_ref(f).map_or(0, |f| f.factors().len())
}

/// Exponent of the `index`-th prime (primes are in increasing order); 0 when out of range.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_factorization_exponent(f: *const MfFactorization, index: usize) -> u32 {
    factorization_ref(f)
        .and_then(|f| f.factors().get(index))
        .map_or(0, |(_, e)| *e)
}

/// The `index`-th prime as a decimal string.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mf_factorization_prime(
    f: *const MfFactorization,
    index: usize,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let f = factorization_ref(f).ok_or_else(|| invalid("factorization is null"))?;
        let (p, _) = f
            .factors()
            .get(index)
            .ok_or_else(|| invalid(format!("index {index} out of range")))?;
        write_string(out, p.to_string())
    })
}

/// The factorization written as `p^e·q`, or `"1"` when empty. Null on a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_factorization_to_string(f: *const MfFactorization) -> *mut c_char {
    factorization_ref(f)
        .and_then(|f| CString::new(f.to_string()).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// Frees a factorization. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mf_factorization_free(f: *mut MfFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}
