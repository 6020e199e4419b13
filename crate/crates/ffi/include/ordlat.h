#ifndef ORDLAT_H
#define ORDLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OrdlatStatus {
  ORDLAT_STATUS_OK = 0,
  ORDLAT_STATUS_NULL_POINTER = 1,
  ORDLAT_STATUS_INVALID_UTF8 = 2,
  ORDLAT_STATUS_PARSE = 3,
  /**
   * Element outside a finite cone's ball, identity queried, or a cone
   * that does not fit the group.
   */
  ORDLAT_STATUS_DOMAIN = 4,
  ORDLAT_STATUS_PRECISION_EXHAUSTED = 5,
  ORDLAT_STATUS_CAP_EXCEEDED = 6,
  ORDLAT_STATUS_INTERNAL = 7,
} OrdlatStatus;

/**
 * A positive cone on a group.
 */
typedef struct OrdlatCone OrdlatCone;

/**
 * A group instance such as `braid:n=3`.
 */
typedef struct OrdlatGroup OrdlatGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *ordlat_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void ordlat_string_free(char *s);

/**
 * Parses a group spec such as `tararin:n=3`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum OrdlatStatus ordlat_group_parse(const char *spec, struct OrdlatGroup **out);

/**
 * # Safety
 * `g` must be NULL or a handle from [`ordlat_group_parse`], freed once.
 */
void ordlat_group_free(struct OrdlatGroup *g);

/**
 * Writes the normal form of `word` to `out`.
 *
 * # Safety
 * Pointers must be valid; `out` receives a string for [`ordlat_string_free`].
 */
enum OrdlatStatus ordlat_word_normalize(const struct OrdlatGroup *g, const char *word, char **out);

/**
 * Parses a cone spec such as `dehornoy` or `tararin:+,-`.
 *
 * # Safety
 * Pointers must be valid; `out` receives a handle for [`ordlat_cone_free`].
 */
enum OrdlatStatus ordlat_cone_parse(const struct OrdlatGroup *g,
                                    const char *spec,
                                    struct OrdlatCone **out);

/**
 * # Safety
 * `c` must be NULL or a handle from [`ordlat_cone_parse`], freed once.
 */
void ordlat_cone_free(struct OrdlatCone *c);

/**
 * Writes `1` if `word` is in the cone and `-1` otherwise. The identity is
 * a domain error.
 *
 * # Safety
 * Pointers must be valid.
 */
enum OrdlatStatus ordlat_cone_sign(const struct OrdlatCone *c, const char *word, int32_t *out);

/**
 * Writes `-1`, `0` or `1` as `g` is below, equal to or above `h`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum OrdlatStatus ordlat_cone_compare(const struct OrdlatCone *c,
                                      const char *g,
                                      const char *h,
                                      int32_t *out);

/**
 * Counts consistent sign assignments on the ball of `radius`, with at
 * most `cap` ball elements and `cap` assignments.
 *
 * # Safety
 * Pointers must be valid.
 */
enum OrdlatStatus ordlat_count_cones(const struct OrdlatGroup *g,
                                     size_t radius,
                                     size_t cap,
                                     size_t *out);

/**
 * Evaluates the lattice term `term` at `point` under the cone.
 *
 * # Safety
 * Pointers must be valid; `out` receives a string for [`ordlat_string_free`].
 */
enum OrdlatStatus ordlat_eval_term(const struct OrdlatCone *c,
                                   const char *term,
                                   const char *point,
                                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDLAT_H */
