/* C interface to the fluxlaw library. */

#ifndef FLUXLAW_H
#define FLUXLAW_H

/* Generated by cbindgen from fluxlaw-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every fallible call.
typedef enum FluxlawStatus {
  FLUXLAW_STATUS_OK = 0,
  // A required pointer argument was null.
  FLUXLAW_STATUS_NULL_POINTER = 1,
  // Arguments violate a precondition (dimensions, ordering, ranges).
  FLUXLAW_STATUS_INVALID_ARGUMENT = 2,
  // A state outside the model's admissible set, or vacuum formation.
  FLUXLAW_STATUS_INADMISSIBLE_STATE = 3,
  // A quadrature could not reach the requested tolerance.
  FLUXLAW_STATUS_ACCURACY = 4,
  // An iterative solve failed or the time step degenerated.
  FLUXLAW_STATUS_SOLVER = 5,
  // A face or checkpoint does not exist on the mesh/trajectory.
  FLUXLAW_STATUS_NOT_FOUND = 6,
  // Config parsing or validation failed.
  FLUXLAW_STATUS_CONFIG = 7,
  FLUXLAW_STATUS_IO = 8,
  // A panic was caught at the boundary; state may be inconsistent.
  FLUXLAW_STATUS_PANIC = 9,
} FluxlawStatus;

// Opaque handle to a conservation-law model.
typedef struct FluxlawModel FluxlawModel;

// Opaque handle to an exact planar-wave solution.
typedef struct FluxlawOracle FluxlawOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Number of bytes (excluding the terminator) of the last error message.
size_t fluxlaw_last_error_length(void);

// Copies the last error message into `buffer` (at most `length` bytes,
// including the NUL terminator). Returns the number of bytes written.
//
// # Safety
// `buffer` must point to at least `length` writable bytes.
size_t fluxlaw_last_error_message(char *buffer, size_t length);

// Creates a Burgers model in `dim` (1 or 2) space dimensions.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum FluxlawStatus fluxlaw_model_burgers(size_t dim, struct FluxlawModel **out);

// Creates a linear advection model with the given constant velocity.
//
// # Safety
// `velocity` must point to `dim` doubles; `out` must be valid.
enum FluxlawStatus fluxlaw_model_advection(const double *velocity,
                                           size_t dim,
                                           struct FluxlawModel **out);

// Creates a 1D shallow-water model with the given gravitational constant.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum FluxlawStatus fluxlaw_model_shallow_water(double gravity, struct FluxlawModel **out);

// Releases a model handle (null is a no-op).
//
// # Safety
// `model` must be a handle returned by a `fluxlaw_model_*` constructor,
// not yet freed.
void fluxlaw_model_free(struct FluxlawModel *model);

// Number of conserved components D, or 0 for a null handle.
//
// # Safety
// `model` must be a live handle or null.
size_t fluxlaw_model_components(const struct FluxlawModel *model);

// Spatial dimension n, or 0 for a null handle.
//
// # Safety
// `model` must be a live handle or null.
size_t fluxlaw_model_dim(const struct FluxlawModel *model);

// Godunov numerical flux through an interface with unit normal `direction`.
//
// # Safety
// `u_left`/`u_right` point to D doubles, `direction` to n doubles, and
// `out` to D writable doubles.
enum FluxlawStatus fluxlaw_godunov_flux(const struct FluxlawModel *model,
                                        const double *u_left,
                                        const double *u_right,
                                        const double *direction,
                                        double *out);

// Upper bound of the characteristic speeds of d·f at `u`.
//
// # Safety
// `u` points to D doubles, `direction` to n doubles, `out` to one double.
enum FluxlawStatus fluxlaw_max_speed(const struct FluxlawModel *model,
                                     const double *u,
                                     const double *direction,
                                     double *out);

// Creates a planar-wave solution with the step u_left/u_right across the
// plane x·normal = offset. The model handle is borrowed, not consumed.
//
// # Safety
// `normal` points to n doubles, the states to D doubles each, `out` to a
// handle slot.
enum FluxlawStatus fluxlaw_oracle_new(const struct FluxlawModel *model,
                                      const double *normal,
                                      double offset,
                                      const double *u_left,
                                      const double *u_right,
                                      struct FluxlawOracle **out);

// Releases an oracle handle (null is a no-op).
//
// # Safety
// `oracle` must be a handle returned by [`fluxlaw_oracle_new`], not yet
// freed.
void fluxlaw_oracle_free(struct FluxlawOracle *oracle);

// Exact pointwise value u(x, t); at t = 0 the initial data is returned.
//
// # Safety
// `x` points to n doubles and `out` to D writable doubles.
enum FluxlawStatus fluxlaw_oracle_sample(const struct FluxlawOracle *oracle,
                                         const double *x,
                                         double t,
                                         double *out);

// Exact mass over an axis-aligned box at time t, componentwise.
//
// # Safety
// `lo`/`hi` point to n doubles and `out` to D writable doubles.
enum FluxlawStatus fluxlaw_oracle_mass_box(const struct FluxlawOracle *oracle,
                                           const double *lo,
                                           const double *hi,
                                           double t,
                                           double *out);

// Time-integrated flux through an axis face over [t1, t2], componentwise.
//
// For 1D solutions pass `cross_lo == cross_hi == 0` (the face is a point
// with counting measure). `sign` orients the face normal along ±e_axis.
// `out_error` (optional) receives the absolute error estimate.
//
// # Safety
// `out` points to D writable doubles; `out_error` is null or points to one
// writable double.
enum FluxlawStatus fluxlaw_oracle_face_flux(const struct FluxlawOracle *oracle,
                                            size_t axis,
                                            double position,
                                            double cross_lo,
                                            double cross_hi,
                                            double sign,
                                            double t1,
                                            double t2,
                                            double tol,
                                            double *out,
                                            double *out_error);

// Runs the verification checks described by a JSON run configuration (the
// same schema the CLI consumes) and returns the report document as a JSON
// string. Free the returned string with [`fluxlaw_string_free`].
//
// # Safety
// `config_json` must be a NUL-terminated string; `out_report` must point to
// a writable `char*` slot.
enum FluxlawStatus fluxlaw_verify_json(const char *config_json, uint64_t seed, char **out_report);

// Frees a string returned by this library (null is a no-op).
//
// # Safety
// `s` must have been returned by a fluxlaw function and not yet freed.
void fluxlaw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLUXLAW_H */
