#ifndef FLOWINC_H
#define FLOWINC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum FlowincStatus {
  FLOWINC_STATUS_OK = 0,
  FLOWINC_STATUS_NULL_POINTER = 1,
  FLOWINC_STATUS_INVALID_UTF8 = 2,
  FLOWINC_STATUS_PARSE = 3,
  FLOWINC_STATUS_INVALID_PARAMETER = 4,
  FLOWINC_STATUS_DIMENSION_MISMATCH = 5,
  FLOWINC_STATUS_SEARCH_EXHAUSTED = 6,
  FLOWINC_STATUS_SCALE_CAP_EXCEEDED = 7,
  FLOWINC_STATUS_OVERFLOW = 8,
  FLOWINC_STATUS_IO = 9,
  FLOWINC_STATUS_PANIC = 10,
  FLOWINC_STATUS_OTHER = 11,
} FlowincStatus;

/**
 * Nilpotent Lie algebra given by structure constants.
 */
typedef struct FlowincAlgebra FlowincAlgebra;

/**
 * Generated family of curves.
 */
typedef struct FlowincFamily FlowincFamily;

/**
 * Polynomial vector field.
 */
typedef struct FlowincField FlowincField;

/**
 * Sparse polynomial with rational coefficients.
 */
typedef struct FlowincPoly FlowincPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null if none. Free with
 * [`flowinc_string_free`].
 */
char *flowinc_last_error_message(void);

/**
 * Clears the thread's last error.
 */
void flowinc_clear_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *flowinc_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void flowinc_string_free(char *s);

/**
 * Parses a polynomial in `x1..x{nvars}`.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum FlowincStatus flowinc_poly_parse(const char *text, size_t nvars, struct FlowincPoly **out);

/**
 * Canonical text of a polynomial, or null on a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
char *flowinc_poly_to_string(const struct FlowincPoly *p);

/**
 * Evaluates at a point given as `nvars` rational strings; writes the value as text.
 *
 * # Safety
 * `p` must be a live handle, `coords` an array of `len` C strings and `out` valid.
 */
enum FlowincStatus flowinc_poly_eval(const struct FlowincPoly *p,
                                     const char *const *coords,
                                     size_t len,
                                     char **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void flowinc_poly_free(struct FlowincPoly *p);

/**
 * Parses a field written `[p1, ..., pn]`.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum FlowincStatus flowinc_field_parse(const char *text, struct FlowincField **out);

/**
 * Lie bracket `[a, b]` as a new handle.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum FlowincStatus flowinc_field_bracket(const struct FlowincField *a,
                                         const struct FlowincField *b,
                                         struct FlowincField **out);

/**
 * # Safety
 * `f` must be null or a live handle.
 */
char *flowinc_field_to_string(const struct FlowincField *f);

/**
 * # Safety
 * `f` must be null or a handle from this library, not yet freed.
 */
void flowinc_field_free(struct FlowincField *f);

/**
 * Generates a family from its flag form, e.g. `parabola_grid:n=2`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` a valid pointer.
 */
enum FlowincStatus flowinc_family_generate(const char *spec, struct FlowincFamily **out);

/**
 * Number of curves, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t flowinc_family_len(const struct FlowincFamily *f);

/**
 * # Safety
 * `f` must be null or a handle from this library, not yet freed.
 */
void flowinc_family_free(struct FlowincFamily *f);

/**
 * Number of distinct incidences between two families.
 *
 * # Safety
 * `l1`, `l2` must be live handles and `out` a valid pointer.
 */
enum FlowincStatus flowinc_incidence_count(const struct FlowincFamily *l1,
                                           const struct FlowincFamily *l2,
                                           size_t workers,
                                           uint64_t *out);

/**
 * Tangent pairs in the parabola grid of size `n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FlowincStatus flowinc_count_tangent_pairs(uint64_t n, uint64_t *out);

/**
 * Incidences of the point/parabola grid of size `n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FlowincStatus flowinc_n7_grid_incidences(uint64_t n, uint64_t *out);

/**
 * Parses an algebra in the text format (`dim`, `step`, rows `i j k c`).
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum FlowincStatus flowinc_algebra_parse(const char *text, struct FlowincAlgebra **out);

/**
 * BCH product of two coordinate vectors of rational strings; the result
 * is written as `dim` strings into `out`, each to be freed by the caller.
 *
 * # Safety
 * `a` must be a live handle; `u`, `v` arrays of `len` C strings; `out` an
 * array with room for `len` pointers.
 */
enum FlowincStatus flowinc_algebra_bch(const struct FlowincAlgebra *a,
                                       const char *const *u,
                                       const char *const *v,
                                       size_t len,
                                       char **out);

/**
 * Pushforward fields for a weak Malcev basis through 0, one field per line.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum FlowincStatus flowinc_algebra_pushforward(const struct FlowincAlgebra *a, char **out);

/**
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void flowinc_algebra_free(struct FlowincAlgebra *a);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOWINC_H */
