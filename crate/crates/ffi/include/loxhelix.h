#ifndef LOXHELIX_H
#define LOXHELIX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Causal character of a sampled tangent.
typedef enum LoxCausal {
  LOX_CAUSAL_SPACELIKE = 0,
  LOX_CAUSAL_TIMELIKE = 1,
  LOX_CAUSAL_LIGHTLIKE = 2,
} LoxCausal;

// Surface family.
typedef enum LoxFamily {
  LOX_FAMILY_I = 1,
  LOX_FAMILY_II = 2,
  LOX_FAMILY_III = 3,
} LoxFamily;

// Which solver produces the curve.
typedef enum LoxSolver {
  // Closed forms on right surfaces, quadrature otherwise.
  LOX_SOLVER_AUTO = 0,
  // Quadrature of the slope formula.
  LOX_SOLVER_GENERAL = 1,
  // Right-helicoidal closed forms only.
  LOX_SOLVER_RIGHT = 2,
  // RK4 on the raw slope field.
  LOX_SOLVER_ORACLE = 3,
} LoxSolver;

// Result of every fallible call.
typedef enum LoxStatus {
  LOX_STATUS_OK = 0,
  // A required pointer argument was null.
  LOX_STATUS_NULL_POINTER = 1,
  // Bad enum value, non-UTF-8 string, wrong buffer length or index.
  LOX_STATUS_INVALID_ARGUMENT = 2,
  // The inputs violate a precondition of the construction.
  LOX_STATUS_VALIDATION = 3,
  // A numerical routine failed on valid inputs.
  LOX_STATUS_NUMERICAL = 4,
  // An internal panic was caught.
  LOX_STATUS_PANIC = 5,
} LoxStatus;

// Opaque solved curve, keeping the problem it came from.
typedef struct LoxCurve LoxCurve;

// Opaque helicoidal surface.
typedef struct LoxSurface LoxSurface;

// Surface construction parameters.
typedef struct LoxSurfaceParams {
  enum LoxFamily family;
  // Ambient dimension n.
  size_t dim;
  // Profile in the mini-language, e.g. `"x1=const(0.6),x3=linear(1)"`.
  const char *profile;
  // +1 or -1; 0 infers it from the profile.
  int32_t epsilon;
  double domain_start;
  double domain_end;
  double c;
  bool right;
} LoxSurfaceParams;

// Loxodrome problem parameters.
typedef struct LoxProblemParams {
  // Constant Lorentzian angle, > 0.
  double phi0;
  // +1 selects the larger slope root, -1 the smaller.
  int32_t branch;
  double u0;
  double v0;
  double u1;
  // Number of samples, >= 2; 0 uses the default.
  size_t samples;
  // Quadrature tolerance; 0 uses the default.
  double tolerance;
  enum LoxSolver solver;
} LoxProblemParams;

// One curve sample without its ambient point.
typedef struct LoxSample {
  double u;
  double v;
  double slope;
  double radicand;
  double tangent_inner;
  // NaN where undefined.
  double angle;
  // A [`LoxCausal`] value.
  int32_t causal;
} LoxSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a surface and stores a new handle in `*out`.
//
// # Safety
// `params` must point to a valid `LoxSurfaceParams` whose `profile` is null
// or a NUL-terminated string; `out` must be writable.
enum LoxStatus lox_surface_new(const struct LoxSurfaceParams *params, struct LoxSurface **out);

// Releases a surface. Null is ignored.
//
// # Safety
// `surface` must come from [`lox_surface_new`] and not be freed twice.
void lox_surface_free(struct LoxSurface *surface);

// Ambient dimension of the surface, 0 for null.
//
// # Safety
// `surface` must be null or a live handle.
size_t lox_surface_dim(const struct LoxSurface *surface);

// Sign ε of the meridian (+1 spacelike, -1 timelike), 0 for null.
//
// # Safety
// `surface` must be null or a live handle.
int32_t lox_surface_epsilon(const struct LoxSurface *surface);

// First fundamental form coefficients at `u`.
//
// # Safety
// `surface` must be a live handle; `e`, `f`, `g` must be writable.
enum LoxStatus lox_surface_metric(const struct LoxSurface *surface,
                                  double u,
                                  double *e,
                                  double *f,
                                  double *g);

// Writes the point `x(u, v)` into `out[0..len]`; `len` must equal the dimension.
//
// # Safety
// `surface` must be a live handle; `out` must hold `len` doubles.
enum LoxStatus lox_surface_embed(const struct LoxSurface *surface,
                                 double u,
                                 double v,
                                 double *out,
                                 size_t len);

// Whether the surface is timelike at `u`.
//
// # Safety
// `surface` must be a live handle; `out` must be writable.
enum LoxStatus lox_surface_is_timelike(const struct LoxSurface *surface, double u, bool *out);

// Solves the loxodrome problem on `surface` and stores a new curve in `*out`.
//
// # Safety
// `surface` must be a live handle, `params` valid and `out` writable.
enum LoxStatus lox_solve(const struct LoxSurface *surface,
                         const struct LoxProblemParams *params,
                         struct LoxCurve **out);

// Releases a curve. Null is ignored.
//
// # Safety
// `curve` must come from [`lox_solve`] and not be freed twice.
void lox_curve_free(struct LoxCurve *curve);

// Number of samples, 0 for null.
//
// # Safety
// `curve` must be null or a live handle.
size_t lox_curve_len(const struct LoxCurve *curve);

// Copies sample `index` into `*out`.
//
// # Safety
// `curve` must be a live handle; `out` must be writable.
enum LoxStatus lox_curve_sample(const struct LoxCurve *curve, size_t index, struct LoxSample *out);

// Writes the ambient point of sample `index` into `out[0..len]`.
//
// # Safety
// `curve` must be a live handle; `out` must hold `len` doubles.
enum LoxStatus lox_curve_point(const struct LoxCurve *curve, size_t index, double *out, size_t len);

// Length of the curve: the closed form where one exists, quadrature otherwise.
// `numeric` (optional) receives the quadrature value.
//
// # Safety
// `curve` must be a live handle; `out` writable; `numeric` null or writable.
enum LoxStatus lox_curve_length(const struct LoxCurve *curve, double *out, double *numeric);

// Re-measures the angle along the curve from the surface partials and writes
// the largest deviation from φ0.
//
// # Safety
// `curve` must be a live handle; `max_deviation` must be writable.
enum LoxStatus lox_curve_verify_angle(const struct LoxCurve *curve, double *max_deviation);

// Incomplete elliptic integral of the first kind F(φ, k), 0 <= k < 1.
//
// # Safety
// `out` must be writable.
enum LoxStatus lox_elliptic_f(double phi, double k, double *out);

// Incomplete elliptic integral of the second kind E(φ, k), 0 <= k <= 1.
//
// # Safety
// `out` must be writable.
enum LoxStatus lox_elliptic_e(double phi, double k, double *out);

// Static name of a status value, e.g. `"validation"`; `"unknown"` otherwise.
const char *lox_status_name(int32_t status);

// Copies the reason code of the last failure on this thread (e.g.
// `"surface-not-timelike"`) into `buf`, truncating and NUL-terminating.
// Returns the buffer size needed including the NUL, or 0 if the last call
// succeeded.
//
// # Safety
// `buf` must be null or hold `len` bytes.
size_t lox_last_error_code(char *buf, size_t len);

// Like [`lox_last_error_code`] for the human-readable message.
//
// # Safety
// `buf` must be null or hold `len` bytes.
size_t lox_last_error_message(char *buf, size_t len);

// Library version as a static string.
const char *lox_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOXHELIX_H */
