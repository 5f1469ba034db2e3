#ifndef HULLKIT_H
#define HULLKIT_H

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum HullkitStatus {
  HULLKIT_STATUS_OK = 0,
  HULLKIT_STATUS_NULL_POINTER = 1,
  HULLKIT_STATUS_INVALID_UTF8 = 2,
  HULLKIT_STATUS_BAD_INPUT = 3,
  HULLKIT_STATUS_DIMENSION_MISMATCH = 4,
  HULLKIT_STATUS_UNSUPPORTED_REGION = 5,
  HULLKIT_STATUS_SINGULAR = 6,
  HULLKIT_STATUS_CONTOUR_ERROR = 7,
  HULLKIT_STATUS_BRANCH_ERROR = 8,
  HULLKIT_STATUS_GROUP_ERROR = 9,
  HULLKIT_STATUS_INTERNAL_ERROR = 10,
} HullkitStatus;

/**
 * Hull-membership verdicts, matching the CLI's 0/1/2 encoding.
 */
typedef enum HullkitVerdict {
  HULLKIT_VERDICT_MEMBER_CERTIFIED = 0,
  HULLKIT_VERDICT_CONE_FAILS_OBSTACLE = 1,
  HULLKIT_VERDICT_CONE_OK_CONNECTIVITY_UNVERIFIED = 2,
} HullkitVerdict;

/**
 * Opaque handle for a parsed contour integrand.
 */
typedef struct HullkitIntegrand HullkitIntegrand;

/**
 * Opaque handle for a parsed region description.
 */
typedef struct HullkitRegion HullkitRegion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message associated with the most recent failure on this thread.
 * The pointer stays valid until the next failing call on the same thread;
 * never free it.
 */
const char *hullkit_last_error(void);

/**
 * Parse a region JSON document ({"dimension": n, "region": ...}) into an
 * opaque handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HullkitStatus hullkit_region_parse(const char *json, struct HullkitRegion **out);

/**
 * Release a region handle. Passing NULL is a no-op.
 *
 * # Safety
 * `region` must have come from `hullkit_region_parse` and not yet be freed.
 */
void hullkit_region_free(struct HullkitRegion *region);

/**
 * The ambient real dimension of a parsed region.
 *
 * # Safety
 * Both pointers must be valid.
 */
enum HullkitStatus hullkit_region_dimension(const struct HullkitRegion *region, uintptr_t *out);

/**
 * Exact membership of a real point in the region.
 *
 * # Safety
 * `point` must reference `len` doubles; other pointers must be valid.
 */
enum HullkitStatus hullkit_region_contains(const struct HullkitRegion *region,
                                           const double *point,
                                           uintptr_t len,
                                           bool *out);

/**
 * Hull membership of the complex point (z_re, z_im) relative to the region,
 * using `samples` connectivity probes from the real `basepoint`.
 *
 * # Safety
 * `z_re`, `z_im`, and `basepoint` must each reference `len` doubles.
 */
enum HullkitStatus hullkit_hull_membership(const struct HullkitRegion *region,
                                           const double *z_re,
                                           const double *z_im,
                                           const double *basepoint,
                                           uintptr_t len,
                                           uintptr_t samples,
                                           enum HullkitVerdict *out);

/**
 * Do the twistor lines of two C^4 points intersect? Writes the incidence
 * flag and the determinant <z - z', z - z'>.
 *
 * # Safety
 * Each coordinate pointer must reference 4 doubles.
 */
enum HullkitStatus hullkit_lines_intersect(const double *z_re,
                                           const double *z_im,
                                           const double *zp_re,
                                           const double *zp_im,
                                           bool *out_intersect,
                                           double *out_det_re,
                                           double *out_det_im);

/**
 * Parse a named contour integrand (same catalogue as the CLI's
 * `bateman --f`).
 *
 * # Safety
 * `name` must be NUL-terminated; `out` must be valid.
 */
enum HullkitStatus hullkit_integrand_parse(const char *name, struct HullkitIntegrand **out);

/**
 * Release an integrand handle. Passing NULL is a no-op.
 *
 * # Safety
 * `f` must have come from `hullkit_integrand_parse` and not yet be freed.
 */
void hullkit_integrand_free(struct HullkitIntegrand *f);

/**
 * Evaluate the contour integral of the integrand over the circle
 * (center, radius) with `nodes` quadrature nodes, at the complex point z.
 *
 * # Safety
 * `z_re`/`z_im` must reference 4 doubles; out-pointers must be valid.
 */
enum HullkitStatus hullkit_bateman_eval(const struct HullkitIntegrand *f,
                                        double center_re,
                                        double center_im,
                                        double radius,
                                        uintptr_t nodes,
                                        const double *z_re,
                                        const double *z_im,
                                        double *out_re,
                                        double *out_im);

/**
 * Branch multiplier of the tracked square root around the circular loop
 * (center, radius) with the given number of steps; -1 signals the
 * odd-dimensional obstruction.
 *
 * # Safety
 * Out-pointers must be valid.
 */
enum HullkitStatus hullkit_newtonian_monodromy(double center_re,
                                               double center_im,
                                               double radius,
                                               uintptr_t steps,
                                               double *out_re,
                                               double *out_im);

/**
 * Reduced-hull membership in C^3 relative to a single real obstacle.
 *
 * # Safety
 * `z_re`/`z_im` must reference 3 doubles, `obstacle` 3 doubles.
 */
enum HullkitStatus hullkit_reduced_hull_member(const double *z_re,
                                               const double *z_im,
                                               const double *obstacle,
                                               bool *out);

/**
 * Numerical dimension of the PQP variety in SO(2m+2, C), deterministic for
 * a fixed seed. m in {2, 3, 4}; expected value m(2m+3).
 *
 * # Safety
 * `out` must be valid.
 */
enum HullkitStatus hullkit_pqp_rank(uintptr_t m, uintptr_t trials, uint64_t seed, uintptr_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HULLKIT_H */
