#ifndef MODFACTOR_H
#define MODFACTOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum MfStatus {
  MF_STATUS_OK = 0,
  /*
   A null pointer, bad UTF-8 or a malformed number.
   */
  MF_STATUS_INVALID_ARGUMENT,
  MF_STATUS_INVALID_WEIGHT,
  MF_STATUS_INVALID_LEVEL,
  MF_STATUS_PRECONDITION,
  MF_STATUS_INCONSISTENCY,
  MF_STATUS_INCONSISTENT_INPUTS,
  MF_STATUS_DOMAIN,
  MF_STATUS_NOT_PHI_MULTIPLE,
  MF_STATUS_FAILURE_TO_SPLIT,
  MF_STATUS_GUESSES_EXHAUSTED,
  MF_STATUS_ORACLE,
  /*
   The library panicked; this is a bug.
   */
  MF_STATUS_INTERNAL,
} MfStatus;

typedef enum MfOracleKind {
  MF_ORACLE_KIND_A,
  MF_ORACLE_KIND_B,
} MfOracleKind;

typedef enum MfDimKind {
  MF_DIM_KIND_A,
  MF_DIM_KIND_B,
  MF_DIM_KIND_G,
  MF_DIM_KIND_H,
} MfDimKind;

typedef enum MfSquarefreeConclusion {
  MF_SQUAREFREE_CONCLUSION_SQUAREFREE,
  MF_SQUAREFREE_CONCLUSION_NOT_SQUAREFREE,
  MF_SQUAREFREE_CONCLUSION_EXCEPTION,
} MfSquarefreeConclusion;

typedef enum MfPrimalityConclusion {
  MF_PRIMALITY_CONCLUSION_PRIME,
  MF_PRIMALITY_CONCLUSION_COMPOSITE,
  MF_PRIMALITY_CONCLUSION_EXCEPTION,
} MfPrimalityConclusion;

typedef enum MfCertificate {
  MF_CERTIFICATE_INTERVAL,
  MF_CERTIFICATE_NO_LARGE_SQUARE_DIVISOR,
} MfCertificate;

/*
 Opaque prime factorization.
 */
typedef struct MfFactorization MfFactorization;

/*
 Opaque source of `A` and `B` values.
 */
typedef struct MfOracle MfOracle;

/*
 Floating part of a square-divisor bound. `theta`, `x1` and `x0` are NaN
 unless `certificate` is `MF_CERTIFICATE_INTERVAL`.
 */
typedef struct MfBounds {
  enum MfCertificate certificate;
  double curly_l;
  double theta;
  double x1;
  double x0;
} MfBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The message for the last failing call on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *mf_last_error_message(void);

/*
 Frees a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void mf_string_free(char *s);

/*
 An oracle that computes `A` and `B` by factoring `N` (levels below 2^64).
 */
struct MfOracle *mf_default_oracle_new(void);

/*
 An empty oracle that serves only values added with [`mf_table_oracle_insert`].
 */
struct MfOracle *mf_table_oracle_new(void);

/*
 Adds `value = kind(k, n)` to a table oracle.

 # Safety
 `oracle` must come from [`mf_table_oracle_new`]; `n` and `value` must be
 NUL-terminated strings.
 */
enum MfStatus mf_table_oracle_insert(struct MfOracle *oracle,
                                     enum MfOracleKind kind,
                                     uint32_t k,
                                     const char *n,
                                     const char *value);

/*
 Queries `kind(k, n)`; the decimal result is written to `out`.

 # Safety
 `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
 */
enum MfStatus mf_oracle_query(const struct MfOracle *oracle,
                              enum MfOracleKind kind,
                              uint32_t k,
                              const char *n,
                              char **out);

/*
 Frees an oracle. Null is ignored.

 # Safety
 `oracle` must be null or a handle from this library, not yet freed.
 */
void mf_oracle_free(struct MfOracle *oracle);

/*
 `A`, `B`, `G` or `H` at `(k, n)`, written to `out` as `"p/q"` or a bare integer.
 `A` and `B` factor `n` by brute force.

 # Safety
 `n` must be a NUL-terminated string and `out` valid for writes.
 */
enum MfStatus mf_dim(enum MfDimKind kind, uint32_t k, const char *n, char **out);

/*
 Squarefree detector with `A(k, n)` taken from `oracle`.

 # Safety
 `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
 */
enum MfStatus mf_squarefree_test(const struct MfOracle *oracle,
                                 uint32_t k,
                                 const char *n,
                                 enum MfSquarefreeConclusion *out);

/*
 Primality detector with `B(k, n)` taken from `oracle`.

 # Safety
 `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
 */
enum MfStatus mf_primality_test(const struct MfOracle *oracle,
                                uint32_t k,
                                const char *n,
                                enum MfPrimalityConclusion *out);

/*
 Interval for the square divisors `d ≥ 27` of `n`, from `A(k, n)` taken from `oracle`.

 # Safety
 `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
 */
enum MfStatus mf_square_divisor_bounds(const struct MfOracle *oracle,
                                       uint32_t k,
                                       const char *n,
                                       struct MfBounds *out);

/*
 Factors `d` given a multiple `m` of `φ(d)`.

 # Safety
 `d` and `m` must be NUL-terminated strings and `out` valid for writes.
 */
enum MfStatus mf_factor_given_phi_multiple(const char *d,
                                           const char *m,
                                           uint64_t seed,
                                           uint32_t retry_budget,
                                           struct MfFactorization **out);

/*
 Splits `n = E·L` from `A(k1, n)` and `A(k2, n)` taken from `oracle`.
 `E` is written as a decimal string, `L` as a factorization.

 # Safety
 `oracle` must be a live handle, `n` a NUL-terminated string, and both outputs valid for writes.
 */
enum MfStatus mf_factor_squarefull(const struct MfOracle *oracle,
                                   const char *n,
                                   uint32_t k1,
                                   uint32_t k2,
                                   uint64_t seed,
                                   uint32_t retry_budget,
                                   char **e_out,
                                   struct MfFactorization **l_out);

/*
 Factors `n` completely from `A(k1, n)`, `A(k2, n)` and `B(kb, n)` taken from `oracle`.

 # Safety
 `oracle` must be a live handle, `n` a NUL-terminated string and `out` valid for writes.
 */
enum MfStatus mf_factor_full(const struct MfOracle *oracle,
                             const char *n,
                             uint32_t k1,
                             uint32_t k2,
                             uint32_t kb,
                             uint64_t seed,
                             uint32_t retry_budget,
                             struct MfFactorization **out);

/*
 Number of distinct primes; 0 for null.

 # Safety
 `f` must be null or a live handle.
 */
uintptr_t mf_factorization_len(const struct MfFactorization *f);

/*
 Exponent of the `index`-th prime (primes are in increasing order); 0 when out of range.

 # Safety
 `f` must be null or a live handle.
 */
uint32_t mf_factorization_exponent(const struct MfFactorization *f, uintptr_t index);

/*
 The `index`-th prime as a decimal string.

 # Safety
 `f` must be a live handle and `out` valid for writes.
 */
enum MfStatus mf_factorization_prime(const struct MfFactorization *f, uintptr_t index, char **out);

/*
 The factorization written as `p^e·q`, or `"1"` when empty. Null on a null handle.

 # Safety
 `f` must be null or a live handle.
 */
char *mf_factorization_to_string(const struct MfFactorization *f);

/*
 Frees a factorization. Null is ignored.

 # Safety
 `f` must be null or a handle from this library, not yet freed.
 */
void mf_factorization_free(struct MfFactorization *f);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODFACTOR_H */
