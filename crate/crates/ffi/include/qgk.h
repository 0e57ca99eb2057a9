#ifndef QGK_H
#define QGK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum QgkStatus {
  QGK_STATUS_OK = 0,
  QGK_STATUS_NULL_POINTER = 1,
  QGK_STATUS_INVALID_ARGUMENT = 2,
  QGK_STATUS_GRID_MISMATCH = 3,
  QGK_STATUS_CONFIG = 4,
  QGK_STATUS_IO = 5,
  QGK_STATUS_SNAPSHOT = 6,
  QGK_STATUS_NON_FINITE = 7,
  QGK_STATUS_NUMERICAL_ABORT = 8,
  QGK_STATUS_QUADRATURE = 9,
  QGK_STATUS_BUFFER_TOO_SMALL = 10,
  QGK_STATUS_PANIC = 11,
} QgkStatus;

/**
 * A real field in spectral storage.
 */
typedef struct QgkField QgkField;

/**
 * A run in progress.
 */
typedef struct QgkRun QgkRun;

/**
 * Energy diagnostics of one state.
 */
typedef struct QgkEnergy {
  double e_first;
  double e_second;
  double x;
  double y;
  double h3;
  double h4;
} QgkEnergy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qgk_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated and
 * always NUL-terminated when `len > 0`). Returns the full message length
 * plus one, or 0 when there is no message.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t qgk_last_error_message(char *buf, size_t len);

/**
 * Builds a run from config text. Relative paths in the text resolve
 * against the current directory.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum QgkStatus qgk_run_from_config(const char *text, struct QgkRun **out);

/**
 * Releases a run; null is ignored.
 *
 * # Safety
 * `run` must come from [`qgk_run_from_config`] and not be used afterwards.
 */
void qgk_run_free(struct QgkRun *run);

/**
 * Advances at most `steps` steps, stopping at the configured end time.
 * Writes the number taken to `taken` when it is not null. After a
 * numerical abort the run keeps its last finite state.
 *
 * # Safety
 * `run` must be a live handle; `taken` null or writable.
 */
enum QgkStatus qgk_run_advance(struct QgkRun *run, size_t steps, size_t *taken);

/**
 * Current time and step index.
 *
 * # Safety
 * `run` must be a live handle; outputs null or writable.
 */
enum QgkStatus qgk_run_time(const struct QgkRun *run, double *time, size_t *step);

/**
 * Writes 1 to `finished` once the end time is reached, else 0.
 *
 * # Safety
 * `run` must be a live handle; `finished` writable.
 */
enum QgkStatus qgk_run_is_finished(const struct QgkRun *run, int32_t *finished);

/**
 * Energy diagnostics of the current state.
 *
 * # Safety
 * `run` must be a live handle; `out` writable.
 */
enum QgkStatus qgk_run_energy(const struct QgkRun *run, struct QgkEnergy *out);

/**
 * Copies the current state into a new field handle.
 *
 * # Safety
 * `run` must be a live handle; `out` writable.
 */
enum QgkStatus qgk_run_state(const struct QgkRun *run, struct QgkField **out);

/**
 * Reads a snapshot file; its time goes to `time` when not null.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` writable; `time` null or writable.
 */
enum QgkStatus qgk_field_load(const char *path, struct QgkField **out, double *time);

/**
 * Writes a snapshot file stamped with `time`.
 *
 * # Safety
 * `field` must be a live handle; `path` NUL-terminated.
 */
enum QgkStatus qgk_field_save(const struct QgkField *field, const char *path, double time);

/**
 * Releases a field; null is ignored.
 *
 * # Safety
 * `field` must come from this library and not be used afterwards.
 */
void qgk_field_free(struct QgkField *field);

/**
 * Grid size `n` and box side `L` of a field.
 *
 * # Safety
 * `field` must be a live handle; outputs null or writable.
 */
enum QgkStatus qgk_field_grid(const struct QgkField *field, size_t *n, double *box_length);

/**
 * Physical samples in row-major order; `len` must be at least `n²`.
 *
 * # Safety
 * `field` must be a live handle; `out` valid for `len` doubles.
 */
enum QgkStatus qgk_field_samples(const struct QgkField *field, double *out, size_t len);

/**
 * `‖u‖_{H^s}`.
 *
 * # Safety
 * `field` must be a live handle; `out` writable.
 */
enum QgkStatus qgk_field_sobolev_norm(const struct QgkField *field, double s, double *out);

/**
 * Whole-plane decay moment `M_k(t)` of a Gaussian radial profile.
 *
 * # Safety
 * `out` must be writable.
 */
enum QgkStatus qgk_decay_moment_gaussian(double width,
                                         uint32_t k,
                                         double mu,
                                         double t,
                                         double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGK_H */
