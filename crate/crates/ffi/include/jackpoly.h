#ifndef JACKPOLY_H
#define JACKPOLY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JpStatus {
  JP_STATUS_OK = 0,
  JP_STATUS_NULL_POINTER = 1,
  JP_STATUS_INVALID_UTF8 = 2,
  JP_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A specialization hit a pole of the construction.
   */
  JP_STATUS_POLE = 4,
  JP_STATUS_IO = 5,
  JP_STATUS_INTERNAL = 6,
} JpStatus;

typedef enum JpVerdict {
  JP_VERDICT_HOLDS = 0,
  JP_VERDICT_FAILS = 1,
  JP_VERDICT_NOT_APPLICABLE = 2,
  JP_VERDICT_CONJECTURE_CONSISTENT = 3,
  JP_VERDICT_CONJECTURE_VIOLATED = 4,
} JpVerdict;

/**
 * Opaque polynomial handle.
 */
typedef struct JpPoly JpPoly;

/**
 * Opaque identity report handle.
 */
typedef struct JpReport JpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *jp_last_error_message(void);

/**
 * Builds one polynomial.
 *
 * `family` is one of jack-p, jack-e, jack-s, hermite-p, hermite-e,
 * laguerre-p, laguerre-e, mac-p, mac-e, mac-s. `label` lists parts
 * ("4,2,0") or frequencies ("[f0,f1,...]"); `n` of 0 takes the length from
 * the label. `alpha` and `a` ("generic" or "p/q") apply to the Jack-type
 * families and `qt` ("generic" or "p^d,p^e") to Macdonald ones; null means
 * generic.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out`
 * must be valid for writes.
 */
enum JpStatus jp_compute(const char *family,
                         const char *label,
                         size_t n,
                         const char *alpha,
                         const char *a,
                         const char *qt,
                         struct JpPoly **out);

/**
 * Parses the canonical text form.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid for writes.
 */
enum JpStatus jp_poly_from_text(const char *text, struct JpPoly **out);

/**
 * Canonical text form; release with `jp_string_free`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for writes.
 */
enum JpStatus jp_poly_to_text(const struct JpPoly *poly, char **out);

/**
 * # Safety
 * `poly` must be a live handle; `out` must be valid for writes.
 */
enum JpStatus jp_poly_nvars(const struct JpPoly *poly, size_t *out);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for writes.
 */
enum JpStatus jp_poly_nterms(const struct JpPoly *poly, size_t *out);

/**
 * Exact equality of two polynomials.
 *
 * # Safety
 * Both handles must be live; `out` must be valid for writes.
 */
enum JpStatus jp_poly_equal(const struct JpPoly *a, const struct JpPoly *b, bool *out);

/**
 * # Safety
 * `poly` must be null or a handle not yet freed.
 */
void jp_poly_free(struct JpPoly *poly);

/**
 * Checks one identity case. `params_json` is an object with any of the
 * keys k, r, s, m, b, n, kappa (array), l, g; null means no parameters.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out`
 * must be valid for writes.
 */
enum JpStatus jp_verify(const char *id,
                        const char *params_json,
                        bool perturb,
                        struct JpReport **out);

/**
 * # Safety
 * `report` must be a live handle; `out` must be valid for writes.
 */
enum JpStatus jp_report_verdict(const struct JpReport *report, enum JpVerdict *out);

/**
 * The report as JSON; release with `jp_string_free`.
 *
 * # Safety
 * `report` must be a live handle; `out` must be valid for writes.
 */
enum JpStatus jp_report_to_json(const struct JpReport *report, char **out);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void jp_report_free(struct JpReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void jp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JACKPOLY_H */
