#ifndef PEANO_H
#define PEANO_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PeanoShape {
  PEANO_SHAPE_INTERVAL = 0,
  PEANO_SHAPE_SQUARE = 1,
  PEANO_SHAPE_CARPET = 2,
  PEANO_SHAPE_GASKET = 3,
} PeanoShape;

typedef enum PeanoStatus {
  PEANO_STATUS_OK = 0,
  PEANO_STATUS_NULL_POINTER = 1,
  PEANO_STATUS_INVALID_ARGUMENT = 2,
  PEANO_STATUS_EMPTY = 3,
  PEANO_STATUS_DISCONNECTED = 4,
  PEANO_STATUS_RASTER = 5,
  PEANO_STATUS_INVERSE_UNDEFINED = 6,
  PEANO_STATUS_DIVERGENT_SERIES = 7,
  PEANO_STATUS_INSUFFICIENT_LEVELS = 8,
  PEANO_STATUS_IO = 9,
  PEANO_STATUS_PIPELINE = 10,
  PEANO_STATUS_PANIC = 11,
} PeanoStatus;

/**
 * A discretized continuum.
 */
typedef struct PeanoContinuum PeanoContinuum;

/**
 * An assembled curve with its certificate.
 */
typedef struct PeanoCurve PeanoCurve;

/**
 * Message of the last failed call on this thread; empty if none. Owned by the library.
 */
const char *peano_last_error(void);

/**
 * Generates a built-in shape. `param` is the size for interval and square, the depth otherwise.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum PeanoStatus peano_continuum_generate(enum PeanoShape shape,
                                          uint32_t param,
                                          struct PeanoContinuum **out);

/**
 * Loads a PGM or PBM image held in memory.
 *
 * # Safety
 * `data` must point to `len` readable bytes.
 */
enum PeanoStatus peano_continuum_from_pnm(const uint8_t *data,
                                          size_t len,
                                          uint8_t threshold,
                                          struct PeanoContinuum **out);

/**
 * # Safety
 * `x` must be null or a live continuum from this library.
 */
size_t peano_continuum_cell_count(const struct PeanoContinuum *x);

/**
 * Normalized coordinates of a cell.
 *
 * # Safety
 * `x` must be a live continuum; `px` and `py` must be writable.
 */
enum PeanoStatus peano_continuum_cell(const struct PeanoContinuum *x,
                                      size_t id,
                                      double *px,
                                      double *py);

/**
 * Finest level whose scale is at least the edge length; 0 for a single cell.
 *
 * # Safety
 * `x` must be null or a live continuum.
 */
uint32_t peano_continuum_resolution_level(const struct PeanoContinuum *x);

/**
 * # Safety
 * `x` must be null or a continuum from this library not yet freed.
 */
void peano_continuum_free(struct PeanoContinuum *x);

/**
 * Builds a curve for the modulus `holder_c * t^(1/alpha)` over `levels` levels
 * (0 picks the resolution level). A failed certificate still yields a curve.
 *
 * # Safety
 * `x` must be a live continuum; `out` must be writable.
 */
enum PeanoStatus peano_assemble(const struct PeanoContinuum *x,
                                double alpha,
                                double holder_c,
                                uint32_t levels,
                                struct PeanoCurve **out);

/**
 * # Safety
 * `c` must be null or a live curve.
 */
double peano_curve_length(const struct PeanoCurve *c);

/**
 * # Safety
 * `c` must be null or a live curve.
 */
size_t peano_curve_breakpoint_count(const struct PeanoCurve *c);

/**
 * # Safety
 * `c` must be a live curve; `t` and `cell` must be writable.
 */
enum PeanoStatus peano_curve_breakpoint(const struct PeanoCurve *c,
                                        size_t i,
                                        double *t,
                                        size_t *cell);

/**
 * Fraction of cells the curve visits.
 *
 * # Safety
 * `c` must be null or a live curve.
 */
double peano_curve_coverage(const struct PeanoCurve *c);

/**
 * # Safety
 * `c` must be null or a live curve.
 */
bool peano_curve_passed(const struct PeanoCurve *c);

/**
 * Certificate as JSON; release with [`peano_string_free`]. Null on failure.
 *
 * # Safety
 * `c` must be null or a live curve.
 */
char *peano_curve_certificate_json(const struct PeanoCurve *c);

/**
 * # Safety
 * `c` must be null or a curve from this library not yet freed.
 */
void peano_curve_free(struct PeanoCurve *c);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void peano_string_free(char *s);

/**
 * S-dimension estimate from cover counts over levels `0..=levels` (0 picks the resolution level).
 *
 * # Safety
 * `x` must be a live continuum; `out` must be writable.
 */
enum PeanoStatus peano_estimate_sdim(const struct PeanoContinuum *x, uint32_t levels, double *out);

/**
 * Closed-form bound on curve length; fails with `DivergentSeries` when `alpha <= 2r`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PeanoStatus peano_holder_bound(double c, double r, double alpha, double *out);

/**
 * Writes the curve as CSV (`t,cell_id,x,y`) to `path`.
 *
 * # Safety
 * `x` and `c` must be live; `path` must be a NUL-terminated UTF-8 string.
 */
enum PeanoStatus peano_curve_write_csv(const struct PeanoContinuum *x,
                                       const struct PeanoCurve *c,
                                       const char *path);

#endif  /* PEANO_H */
