#ifndef MAGCUBE_H
#define MAGCUBE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MagcubeStatus {
  MAGCUBE_STATUS_OK = 0,
  MAGCUBE_STATUS_NULL_ARGUMENT = 1,
  MAGCUBE_STATUS_INVALID_INPUT = 2,
  MAGCUBE_STATUS_BUDGET_EXCEEDED = 3,
  MAGCUBE_STATUS_INTEGRITY = 4,
  MAGCUBE_STATUS_INFEASIBLE = 5,
  MAGCUBE_STATUS_IO = 6,
  MAGCUBE_STATUS_PANIC = 7,
} MagcubeStatus;

/**
 * Opaque cube catalog.
 */
typedef struct MagcubeCatalog MagcubeCatalog;

typedef struct MagcubeFieldVector {
  double bx;
  double by;
  double bz;
} MagcubeFieldVector;

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *magcube_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void magcube_string_free(char *s);

struct MagcubeCatalog *magcube_catalog_default(void);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum MagcubeStatus magcube_catalog_from_json(const char *json, struct MagcubeCatalog **out);

/**
 * # Safety
 * `catalog` must be null or a handle from this library, freed once.
 */
void magcube_catalog_free(struct MagcubeCatalog *catalog);

/**
 * Number of cube types in the catalog, or 0 for null.
 *
 * # Safety
 * `catalog` must be null or a live handle.
 */
size_t magcube_catalog_len(const struct MagcubeCatalog *catalog);

/**
 * Fixed polyominoes (`dim` 2) or polycubes (`dim` 3) of size `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum MagcubeStatus magcube_count_fixed(uint32_t dim,
                                       uint32_t n,
                                       uint32_t workers,
                                       uint64_t max_nodes,
                                       uint64_t *out);

/**
 * Valid colored shapes of `n` cubes from `supply` (`"cyan=1,magenta=3"`).
 *
 * # Safety
 * Pointers must be valid; `supply` nul-terminated.
 */
enum MagcubeStatus magcube_count_colored(const struct MagcubeCatalog *catalog,
                                         const char *supply,
                                         uint32_t n,
                                         uint32_t dim,
                                         uint32_t workers,
                                         uint64_t max_nodes,
                                         uint64_t *out);

/**
 * Shapes as the JSON list written by `magcube enumerate --format json`.
 * `dim == 0` picks 3 when any supplied type is non-planar, else 2.
 *
 * # Safety
 * Pointers must be valid; `*out_json` is released with [`magcube_string_free`].
 */
enum MagcubeStatus magcube_enumerate_json(const struct MagcubeCatalog *catalog,
                                          const char *supply,
                                          uint32_t n,
                                          uint32_t dim,
                                          uint32_t workers,
                                          uint64_t max_nodes,
                                          char **out_json);

/**
 * Reachable shapes and their shortest move sequences from a start given as
 * a JSON list of `{"x","y","color"}`.
 *
 * # Safety
 * Pointers must be valid; `*out_json` is released with [`magcube_string_free`].
 */
enum MagcubeStatus magcube_plan_json(const struct MagcubeCatalog *catalog,
                                     uint32_t width,
                                     uint32_t height,
                                     const char *start_json,
                                     uint64_t max_nodes,
                                     char **out_json);

/**
 * Monte Carlo reachability statistics in the `json` export format.
 *
 * # Safety
 * Pointers must be valid; `*out_json` is released with [`magcube_string_free`].
 */
enum MagcubeStatus magcube_monte_carlo_json(const struct MagcubeCatalog *catalog,
                                            const char *supply,
                                            uint32_t width,
                                            uint32_t height,
                                            uint32_t trials,
                                            uint32_t restarts,
                                            uint64_t seed,
                                            uint32_t workers,
                                            char **out_json);

/**
 * Field of amplitude `amplitude` at elevation `alpha` and azimuth `theta`
 * (radians).
 */
struct MagcubeFieldVector magcube_field_vector(double amplitude, double alpha, double theta);

#endif  /* MAGCUBE_H */
