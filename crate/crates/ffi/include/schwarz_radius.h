#ifndef SCHWARZ_RADIUS_H
#define SCHWARZ_RADIUS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SrDerivative {
  SR_PRE_SCHWARZIAN = 0,
  SR_SCHWARZIAN = 1,
} SrDerivative;

typedef enum SrNormStatus {
  SR_NORM_INTERIOR = 0,
  SR_NORM_BOUNDARY_LIMIT = 1,
  SR_NORM_INFINITE = 2,
  SR_NORM_LOWER_BOUND = 3,
} SrNormStatus;

typedef enum SrRadiusMethod {
  SR_CLOSED_FORM = 0,
  SR_EXACT_QUINTIC_ROOT = 1,
  SR_BISECTION = 2,
} SrRadiusMethod;

// Status code of every fallible call.
typedef enum SrStatus {
  SR_OK = 0,
  // A required pointer argument was null.
  SR_NULL_POINTER = 1,
  // An argument is outside its domain.
  SR_DOMAIN = 2,
  // Non-convergence or another numeric failure.
  SR_NUMERIC = 3,
  // The derivative has a pole at the requested point.
  SR_POLE = 4,
  // Internal panic; the library state is unaffected.
  SR_PANIC = 5,
} SrStatus;

// Opaque normalized analytic function on the unit disk.
typedef struct SrFunction SrFunction;

typedef struct SrNorm {
  // `+inf` when unbounded.
  double value;
  double maximizer_re;
  double maximizer_im;
  enum SrNormStatus status;
  double accuracy;
} SrNorm;

typedef struct SrRadius {
  double radius;
  enum SrRadiusMethod method;
  double residual;
  double bracket_width;
  // Nonzero when every dilation qualifies (radius 1).
  int32_t saturated;
} SrRadius;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call into the library on the same thread.
const char *sr_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *sr_version(void);

struct SrFunction *sr_function_identity(void);

struct SrFunction *sr_function_koebe(void);

// `e^{-i theta} k(e^{i theta} z)`.
struct SrFunction *sr_function_rotated_koebe(double theta);

// Function with real Taylor coefficients `coeffs[0..len]`; requires
// `coeffs[0] = 0` and `coeffs[1] = 1`.
//
// # Safety
// `coeffs` must point to `len` readable doubles; `out` must be writable.
enum SrStatus sr_function_series(const double *coeffs, uintptr_t len, struct SrFunction **out);

// New handle for the dilation `f(r z) / r`, `0 <= r < 1`.
//
// # Safety
// `f` must be a live handle or null; `out` must be writable.
enum SrStatus sr_function_dilate(const struct SrFunction *f, double r, struct SrFunction **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `f` must come from this library and not be freed twice.
void sr_function_free(struct SrFunction *f);

// `T_f(z)` or `S_f(z)`. Returns `SrPole` where `f'` vanishes or `f` is
// singular.
//
// # Safety
// `f` must be a live handle; `out_re` and `out_im` must be writable.
enum SrStatus sr_derivative_at(const struct SrFunction *f,
                               enum SrDerivative kind,
                               double re,
                               double im,
                               double *out_re,
                               double *out_im);

// Weighted sup-norm `sup (1-|z|^2)^alpha |T_f|` (or `S_f`).
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum SrStatus sr_norm(const struct SrFunction *f,
                      enum SrDerivative kind,
                      double alpha,
                      struct SrNorm *out);

// Sharp bound on `||T_{f_r}||_alpha` over the univalent class.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_preschwarzian_bound(double r, double alpha, double *out);

// Sharp bound `C_alpha(r)` on `||S_{f_r}||_alpha`.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_schwarzian_bound(double r, double alpha, double *out);

// `P(alpha)`; `+inf` for `alpha < 1`.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_p_alpha(double alpha, double *out);

// `P~(alpha)`; `+inf` for `alpha < 2`, else 6.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_p_tilde(double alpha, double *out);

// `B_alpha(M)`-radius of the univalent class.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_b_radius(double m, double alpha, double tol, struct SrRadius *out);

// `B_1(1)`-radius from the exact quintic.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_b1_radius_exact(double tol, struct SrRadius *out);

// `N_alpha(M)`-radius of the univalent class.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_n_radius(double m, double alpha, double tol, struct SrRadius *out);

// Elimination chain as a JSON object. Free with [`sr_string_free`].
//
// # Safety
// `out` must be writable.
enum SrStatus sr_eliminate_json(char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void sr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHWARZ_RADIUS_H */
