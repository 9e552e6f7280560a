#ifndef DISKLADDER_H
#define DISKLADDER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = -1,
  DL_STATUS_PARSE = -2,
  DL_STATUS_DOMAIN = -3,
  DL_STATUS_UNDERDETERMINED = -4,
  DL_STATUS_IO = -5,
  DL_STATUS_PANIC = -99,
} DlStatus;

/**
 * A product quadrature rule on the unit disk.
 */
typedef struct DlDiskRule DlDiskRule;

/**
 * A polynomial in `z`, `z̄` with exact or floating coefficients.
 */
typedef struct DlPoly DlPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *dl_last_error(void);

/**
 * Builds `Q^μ_{k,j}`. `mu` is `"p/q"` for exact coefficients, otherwise a
 * decimal for floating ones.
 *
 * # Safety
 * `mu` must be a NUL-terminated string and `out` a valid pointer.
 */
DlStatus dl_poly_zernike(uint32_t k, uint32_t j, const char *mu, DlPoly **out);

/**
 * Parses a polynomial from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
DlStatus dl_poly_from_json(const char *json, DlPoly **out);

/**
 * # Safety
 * `poly` must be NULL or a handle from this library not yet freed.
 */
void dl_poly_free(DlPoly *poly);

/**
 * Number of stored (non-zero) terms.
 *
 * # Safety
 * `poly` must be a live handle.
 */
size_t dl_poly_num_terms(const DlPoly *poly);

/**
 * Evaluates at `x + iy`.
 *
 * # Safety
 * `poly` must be a live handle; `re` and `im` valid pointers.
 */
DlStatus dl_poly_eval(const DlPoly *poly, double x, double y, double *re, double *im);

/**
 * JSON form of the polynomial; release with [`dl_string_free`].
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
DlStatus dl_poly_to_json(const DlPoly *poly, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void dl_string_free(char *s);

/**
 * `h^μ_{k,j}`, the squared norm of `Q^μ_{k,j}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
DlStatus dl_norm_h(uint32_t k, uint32_t j, double mu, double *out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
DlStatus dl_disk_rule_new(double mu, size_t n_radial, size_t n_angular, DlDiskRule **out);

/**
 * # Safety
 * `rule` must be NULL or a handle from this library not yet freed.
 */
void dl_disk_rule_free(DlDiskRule *rule);

/**
 * # Safety
 * `rule` must be a live handle.
 */
size_t dl_disk_rule_len(const DlDiskRule *rule);

/**
 * Node `index` as `(x, y, weight)`.
 *
 * # Safety
 * `rule` must be a live handle; `x`, `y`, `weight` valid pointers.
 */
DlStatus dl_disk_rule_node(const DlDiskRule *rule,
                           size_t index,
                           double *x,
                           double *y,
                           double *weight);

/**
 * `b_μ ∫ p conj(q) w_μ` with the given rule, both polynomials in float form.
 *
 * # Safety
 * All handles must be live; `re` and `im` valid pointers.
 */
DlStatus dl_disk_inner(const DlDiskRule *rule,
                       const DlPoly *p,
                       const DlPoly *q,
                       double *re,
                       double *im);

/**
 * Runs the exact verification suite for one family (`"ladder1"`, `"Z5"`,
 * `"all"`, ...) on the default parameter grid with the given index bounds.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `passed` and `failed` valid
 * pointers.
 */
DlStatus dl_verify(const char *family,
                   uint32_t kmax,
                   uint32_t jmax,
                   size_t *passed,
                   size_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISKLADDER_H */
