#ifndef COUPLED_OTTO_H
#define COUPLED_OTTO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum OttoStatus {
  OTTO_STATUS_OK = 0,
  OTTO_STATUS_NULL_POINTER = 1,
  OTTO_STATUS_DOMAIN_ERROR = 2,
  OTTO_STATUS_REGIME_MISMATCH = 3,
  OTTO_STATUS_DEGENERATE_BATHS = 4,
  OTTO_STATUS_UNKNOWN_MODEL = 5,
  OTTO_STATUS_EMPTY_DOMAIN = 6,
  OTTO_STATUS_NUMERICAL_ERROR = 7,
  OTTO_STATUS_INCONSISTENT_ENERGY = 8,
  /**
   * The requested quantity is not defined in the current regime.
   */
  OTTO_STATUS_UNDEFINED = 9,
  OTTO_STATUS_INVALID_ARGUMENT = 10,
  OTTO_STATUS_PANIC = 11,
} OttoStatus;

typedef enum OttoMedium {
  OTTO_MEDIUM_OSCILLATOR = 0,
  OTTO_MEDIUM_SPIN = 1,
} OttoMedium;

typedef enum OttoRegime {
  OTTO_REGIME_ENGINE = 0,
  OTTO_REGIME_REFRIGERATOR = 1,
  OTTO_REGIME_DISSIPATOR = 2,
} OttoRegime;

typedef enum OttoDevice {
  OTTO_DEVICE_ENGINE = 0,
  OTTO_DEVICE_REFRIGERATOR = 1,
} OttoDevice;

/**
 * Opaque evaluated cycle.
 */
typedef struct OttoCycleResult OttoCycleResult;

/**
 * Opaque cycle specification.
 */
typedef struct OttoCycleSpec OttoCycleSpec;

/**
 * Per-mode cycle quantities. `figure_of_merit` is NaN when the mode is a
 * dissipator.
 */
typedef struct OttoModeResult {
  double omega_hot;
  double omega_cold;
  double q_hot;
  double q_cold;
  double work;
  enum OttoRegime regime;
  bool on_boundary;
  double figure_of_merit;
} OttoModeResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *otto_last_error_message(void);

/**
 * Static name of a status code.
 */
const char *otto_status_name(enum OttoStatus status);

/**
 * Library version as a static NUL-terminated string.
 */
const char *otto_version(void);

/**
 * Normal-mode frequencies at one point. For oscillators `first`, `second`
 * are λ_x, λ_p; for spins J_x, J_y.
 *
 * # Safety
 * `a` and `b` must be valid for writes.
 */
enum OttoStatus otto_normal_modes(enum OttoMedium medium,
                                  double omega,
                                  double first,
                                  double second,
                                  double *a,
                                  double *b);

/**
 * Builds a validated cycle driven between two (ω, coupling) points.
 *
 * # Safety
 * `out` must be valid for writes. On success `*out` owns a handle that
 * must be released with [`otto_cycle_spec_free`].
 */
enum OttoStatus otto_cycle_spec_new(enum OttoMedium medium,
                                    double omega_hot,
                                    double first_hot,
                                    double second_hot,
                                    double omega_cold,
                                    double first_cold,
                                    double second_cold,
                                    double t_hot,
                                    double t_cold,
                                    struct OttoCycleSpec **out);

/**
 * Releases a spec handle. NULL is ignored.
 *
 * # Safety
 * `spec` must come from [`otto_cycle_spec_new`] and not be used afterwards.
 */
void otto_cycle_spec_free(struct OttoCycleSpec *spec);

/**
 * Evaluates heats, work, regimes and figures of merit.
 *
 * # Safety
 * `spec` must be a live handle and `out` valid for writes. On success
 * `*out` must be released with [`otto_cycle_result_free`].
 */
enum OttoStatus otto_evaluate_cycle(const struct OttoCycleSpec *spec, struct OttoCycleResult **out);

/**
 * Releases a result handle. NULL is ignored.
 *
 * # Safety
 * `result` must come from [`otto_evaluate_cycle`] and not be used afterwards.
 */
void otto_cycle_result_free(struct OttoCycleResult *result);

/**
 * Total heats into the medium and work done by it.
 *
 * # Safety
 * `result` must be a live handle; outputs must be valid for writes.
 */
enum OttoStatus otto_cycle_result_totals(const struct OttoCycleResult *result,
                                         double *q_hot,
                                         double *q_cold,
                                         double *work);

/**
 * Regime of the composite system.
 *
 * # Safety
 * `result` must be a live handle; `out` valid for writes.
 */
enum OttoStatus otto_cycle_result_regime(const struct OttoCycleResult *result,
                                         enum OttoRegime *out);

/**
 * Global efficiency (engine) or COP (refrigerator); `Undefined` otherwise.
 *
 * # Safety
 * `result` must be a live handle; `out` valid for writes.
 */
enum OttoStatus otto_cycle_result_figure_of_merit(const struct OttoCycleResult *result,
                                                  double *out);

/**
 * Per-mode bounds on the global figure of merit.
 *
 * # Safety
 * `result` must be a live handle; outputs valid for writes.
 */
enum OttoStatus otto_cycle_result_bounds(const struct OttoCycleResult *result,
                                         double *low,
                                         double *high);

/**
 * Quantities of mode 0 (A, the `+` branch) or 1 (B).
 *
 * # Safety
 * `result` must be a live handle; `out` valid for writes.
 */
enum OttoStatus otto_cycle_result_mode(const struct OttoCycleResult *result,
                                       uint32_t mode,
                                       struct OttoModeResult *out);

/**
 * Wootters concurrences of the thermal states at the hot and cold points
 * of a spin cycle.
 *
 * # Safety
 * `spec` must be a live handle; outputs valid for writes.
 */
enum OttoStatus otto_cycle_concurrences(const struct OttoCycleSpec *spec,
                                        double *c_hot,
                                        double *c_cold);

/**
 * XX coupling at which one mode reaches its Carnot point.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum OttoStatus otto_critical_coupling(enum OttoDevice device,
                                       double omega,
                                       double omega_prime,
                                       double t_hot,
                                       double t_cold,
                                       double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COUPLED_OTTO_H */
