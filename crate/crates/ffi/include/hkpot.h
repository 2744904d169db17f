#ifndef HKPOT_H
#define HKPOT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `HK_OK` is zero; everything else is an error.
 */
typedef enum HkStatus {
  HK_OK = 0,
  HK_NULL_POINTER = 1,
  HK_INVALID_UTF8 = 2,
  HK_PARSE = 3,
  HK_INVALID_PARAMETER = 4,
  HK_DOMAIN = 5,
  HK_UNSUPPORTED = 6,
  HK_NEAR_SINGULAR = 7,
  HK_NUMERICAL = 8,
  HK_PANIC = 9,
} HkStatus;

/**
 * An orbit together with its algebra and `so(4)` frame.
 */
typedef struct HkOrbit HkOrbit;

/**
 * A potential bound to a value of `k`.
 */
typedef struct HkPotential HkPotential;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *hkpot_version(void);

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *hkpot_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hkpot_string_free(char *s);

/**
 * Builds the orbit named by `id`, e.g. `"A:5:2,2,1"` or `"G2"`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HkStatus hkpot_orbit_new(const char *id, struct HkOrbit **out);

/**
 * # Safety
 * `orbit` must come from [`hkpot_orbit_new`] and not have been freed.
 */
void hkpot_orbit_free(struct HkOrbit *orbit);

/**
 * Complex dimension of the ambient Lie algebra.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HkStatus hkpot_orbit_algebra_dim(const struct HkOrbit *orbit, size_t *out);

/**
 * The constant `k^2` of the orbit. Unsupported for G2.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HkStatus hkpot_orbit_k2(const struct HkOrbit *orbit, double *out);

/**
 * `eta1`, `eta2` and the complex orbit dimension at the representative
 * with parameters `(s, t)`. Any of the outputs may be null.
 *
 * # Safety
 * `orbit` must be valid; non-null outputs must be writable.
 */
enum HkStatus hkpot_orbit_point(const struct HkOrbit *orbit,
                                double s,
                                double t,
                                double *eta1,
                                double *eta2,
                                size_t *orbit_dim);

/**
 * Builds a potential from `spec` (`theorem`, `g2`, `sl2:c=..`,
 * `family:c=..`) with `k` taken from `orbit`. `c` fills in a missing
 * family parameter; pass NaN to leave it unset.
 *
 * # Safety
 * Pointers must be valid; `spec` NUL-terminated.
 */
enum HkStatus hkpot_potential_new(const char *spec,
                                  const struct HkOrbit *orbit,
                                  double c,
                                  struct HkPotential **out);

/**
 * # Safety
 * `pot` must come from [`hkpot_potential_new`] and not have been freed.
 */
void hkpot_potential_free(struct HkPotential *pot);

/**
 * `rho(eta1, eta2)`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HkStatus hkpot_potential_value(const struct HkPotential *pot,
                                    double eta1,
                                    double eta2,
                                    double *out);

/**
 * Runs every geometry check at `(s, t)` on a randomly conjugated point.
 * Writes the report as JSON to `json_out` (free with
 * [`hkpot_string_free`]) and whether all checks passed to `passed`.
 * Either output may be null.
 *
 * # Safety
 * Handles must be valid; non-null outputs must be writable.
 */
enum HkStatus hkpot_verify_point(const struct HkOrbit *orbit,
                                 const struct HkPotential *pot,
                                 double s,
                                 double t,
                                 uint64_t seed,
                                 char **json_out,
                                 int *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HKPOT_H */
