#ifndef PSINV_H
#define PSINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PsinvStatus {
  PSINV_STATUS_OK = 0,
  // Bad argument or configuration.
  PSINV_STATUS_USAGE = 1,
  // A numerical precondition failed (not normalized, not monic, ...).
  PSINV_STATUS_NUMERICAL = 2,
  PSINV_STATUS_IO = 3,
  PSINV_STATUS_NULL_POINTER = 4,
  // Output buffer smaller than the result.
  PSINV_STATUS_BUFFER_TOO_SMALL = 5,
  PSINV_STATUS_PANIC = 6,
} PsinvStatus;

typedef enum PsinvOrder {
  PSINV_ORDER_FORWARD = 0,
  PSINV_ORDER_BACKWARD = 1,
} PsinvOrder;

typedef enum PsinvQuadSign {
  PSINV_QUAD_SIGN_PLUS = 0,
  PSINV_QUAD_SIGN_MINUS = 1,
} PsinvQuadSign;

// Opaque binary64 power series.
typedef struct PsinvSeries PsinvSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; valid until the next call.
const char *psinv_last_error_message(void);

// Copies `coeffs[0..len]` into a new series. Inversion needs `coeffs[0] == 1`.
//
// # Safety
// `coeffs` must point to `len` readable values and `out` must be writable.
enum PsinvStatus psinv_series_new(const double *coeffs, uintptr_t len, struct PsinvSeries **out);

// # Safety
// `s` must come from this library and not be freed twice; null is ignored.
void psinv_series_free(struct PsinvSeries *s);

// Number of stored coefficients (order + 1), 0 for null.
//
// # Safety
// `s` must be null or a live handle.
uintptr_t psinv_series_len(const struct PsinvSeries *s);

// # Safety
// `s` must be a live handle and `out` must hold `cap` values.
enum PsinvStatus psinv_series_coeffs(const struct PsinvSeries *s, double *out, uintptr_t cap);

// Binary64 inverse to order `n` as a new handle.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum PsinvStatus psinv_series_invert(const struct PsinvSeries *s,
                                     uintptr_t n,
                                     struct PsinvSeries **out);

// Componentwise absolute error bound of binary64 inversion to order `n`
// (`n + 1` values, rounded upward).
//
// # Safety
// `s` must be a live handle and `out` must hold `cap` values.
enum PsinvStatus psinv_theorem31_bound(const struct PsinvSeries *s,
                                       uintptr_t n,
                                       double *out,
                                       uintptr_t cap);

// Absolute condition bound for relative coefficient perturbations of size
// binary64 `u` (`n + 1` values, rounded upward).
//
// # Safety
// `s` must be a live handle and `out` must hold `cap` values.
enum PsinvStatus psinv_condition_bound(const struct PsinvSeries *s,
                                       uintptr_t n,
                                       double *out,
                                       uintptr_t cap);

// Divides the monic polynomial `coeffs[0..len]` (ascending) by `x - root`.
// Writes `len - 1` quotient coefficients and, when `bound` is not null,
// their absolute error bounds.
//
// # Safety
// `coeffs` must hold `len` values; `quotient` and a non-null `bound` must hold `cap` values.
enum PsinvStatus psinv_deflate(const double *coeffs,
                               uintptr_t len,
                               double root,
                               enum PsinvOrder order,
                               double *quotient,
                               double *bound,
                               uintptr_t cap);

// Coefficients `c_0..c_n` of `1/(x^2 + b x +- 1)` by the three-term recurrence.
//
// # Safety
// `out` must hold `cap` values.
enum PsinvStatus psinv_quadratic_invert(double b,
                                        enum PsinvQuadSign sign,
                                        uintptr_t n,
                                        double *out,
                                        uintptr_t cap);

// `|p(z)| / |p|(|z|)` for `p = coeffs[0..len]` and `z = re + i im`.
//
// # Safety
// `coeffs` must hold `len` values and `out` be writable.
enum PsinvStatus psinv_pseudozero_indicator(const double *coeffs,
                                            uintptr_t len,
                                            double re,
                                            double im,
                                            double *out);

// `gamma_n = n u / (1 - n u)` for binary64, rounded upward.
//
// # Safety
// `out` must be writable.
enum PsinvStatus psinv_gamma(uintptr_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSINV_H */
