#ifndef DIXON_COMPLEX_H
#define DIXON_COMPLEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DixonBettiMethod {
  DIXON_BETTI_METHOD_SHELLING = 0,
  DIXON_BETTI_METHOD_MATRIX = 1,
} DixonBettiMethod;

typedef enum DixonIdentity {
  DIXON_IDENTITY_DIXON = 0,
  DIXON_IDENTITY_THREE_F2 = 1,
  DIXON_IDENTITY_AIGNER = 2,
} DixonIdentity;

typedef enum DixonStatus {
  DIXON_STATUS_OK = 0,
  DIXON_STATUS_VERIFICATION_FAILED = 1,
  DIXON_STATUS_INVALID_ARGUMENT = 2,
  DIXON_STATUS_BUDGET_EXCEEDED = 3,
  DIXON_STATUS_IO = 4,
  DIXON_STATUS_NULL_POINTER = 5,
  DIXON_STATUS_BUFFER_TOO_SMALL = 6,
  DIXON_STATUS_INTERNAL = 7,
} DixonStatus;

typedef enum DixonWitnessMode {
  DIXON_WITNESS_MODE_CONSTRUCTIVE = 0,
  DIXON_WITNESS_MODE_EXHAUSTIVE = 1,
  DIXON_WITNESS_MODE_BOTH = 2,
} DixonWitnessMode;

/**
 * Opaque handle for Γ_p(n) with a face budget.
 */
typedef struct DixonComplex DixonComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dixon_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next library call on the same thread.
 */
const char *dixon_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dixon_string_free(char *s);

/**
 * Creates a handle for Γ_p(n). A zero budget selects the default.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DixonStatus dixon_complex_new(uint32_t p,
                                   uint32_t n,
                                   uint64_t budget,
                                   struct DixonComplex **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from [`dixon_complex_new`] and not have been freed already.
 */
void dixon_complex_free(struct DixonComplex *h);

/**
 * `f_dim = C(n, dim+1)^p`; fails with `BudgetExceeded` if it does not fit 64 bits.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum DixonStatus dixon_face_count(const struct DixonComplex *h, int64_t dim, uint64_t *out);

/**
 * Reduced Euler characteristic as a decimal string.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum DixonStatus dixon_euler_characteristic(const struct DixonComplex *h, char **out);

/**
 * Facets in order 𝒪, in the facet text format.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum DixonStatus dixon_facets_text(const struct DixonComplex *h, char **out);

/**
 * Checks order 𝒪. Returns `VerificationFailed` when some pair has no witness;
 * the counts are written either way.
 *
 * # Safety
 * `h` must be a live handle; `pairs` and `violations` valid for writes.
 */
enum DixonStatus dixon_verify_shelling(const struct DixonComplex *h,
                                       enum DixonWitnessMode mode,
                                       uint64_t *pairs,
                                       uint64_t *violations);

/**
 * Reduced Betti numbers `β_{-1}, ..., β_{n-1}` into `out[0..n+1]`.
 * `len` receives the number of entries; with `cap` too small nothing is
 * copied and `BufferTooSmall` is returned.
 *
 * # Safety
 * `h` must be a live handle, `out` valid for `cap` writes, `len` valid for writes.
 */
enum DixonStatus dixon_betti(const struct DixonComplex *h,
                             enum DixonBettiMethod method,
                             uint64_t *out,
                             size_t cap,
                             size_t *len);

/**
 * Whether the alternating face count equals the alternating Betti sum
 * (Betti numbers from matrix ranks).
 *
 * # Safety
 * `h` must be a live handle and `holds` valid for writes.
 */
enum DixonStatus dixon_euler_poincare(const struct DixonComplex *h, bool *holds);

/**
 * Checks an identity over `1..=max` (`0..=max` per entry for 3F2).
 * Returns `VerificationFailed` if any case fails.
 *
 * # Safety
 * `passed` and `total` must be valid for writes.
 */
enum DixonStatus dixon_identity_check(enum DixonIdentity which,
                                      uint64_t max,
                                      uint64_t *passed,
                                      uint64_t *total);

/**
 * `Σ_s (−1)^s C(n,s)^3` as a decimal string.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DixonStatus dixon_lhs_string(uint64_t n, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DIXON_COMPLEX_H */
