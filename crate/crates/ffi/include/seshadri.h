#ifndef SESHADRI_H
#define SESHADRI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SesStatus {
  SES_STATUS_OK = 0,
  SES_STATUS_NULL_POINTER = 1,
  SES_STATUS_INVALID_ARGUMENT = 2,
  SES_STATUS_NOT_AMPLE = 3,
  SES_STATUS_INVALID_POINT = 4,
  /**
   * The value does not fit the requested C type.
   */
  SES_STATUS_OVERFLOW = 5,
  SES_STATUS_PANIC = 6,
} SesStatus;

typedef enum SesPointKind {
  SES_POINT_KIND_VERY_GENERAL = 0,
  /**
   * On a singular fibre; pass its multiplicity alongside.
   */
  SES_POINT_KIND_ON_SINGULAR_FIBRE = 1,
  SES_POINT_KIND_ARBITRARY = 2,
} SesPointKind;

typedef enum SesEstimateKind {
  SES_ESTIMATE_KIND_EXACT = 0,
  SES_ESTIMATE_KIND_CERTIFIED_RATIONAL = 1,
  SES_ESTIMATE_KIND_BOUNDED_BELOW = 2,
  SES_ESTIMATE_KIND_UNKNOWN_WITH_BOUND = 3,
} SesEstimateKind;

/**
 * Opaque closed-form estimate.
 */
typedef struct SesEstimate SesEstimate;

/**
 * Opaque oracle report.
 */
typedef struct SesReport SesReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread; do not free.
 */
const char *ses_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ses_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ses_string_free(char *s);

/**
 * `L² = 2ab`, or [`SesStatus::Overflow`] past 64 bits.
 *
 * # Safety
 * `out` must be NULL or point to writable storage.
 */
enum SesStatus ses_self_intersection(int64_t a, int64_t b, int64_t *out);

/**
 * `ε(L)` for surface type `type_id` and `L = (a,b)`.
 *
 * # Safety
 * `out` must be NULL or point to writable storage.
 */
enum SesStatus ses_epsilon_min(uint8_t type_id, int64_t a, int64_t b, struct SesEstimate **out);

/**
 * `ε(L,1)` with `δ = delta_num/delta_den`; a zero denominator selects the
 * default `δ = 93/100`.
 *
 * # Safety
 * `out` must be NULL or point to writable storage.
 */
enum SesStatus ses_epsilon_one(uint8_t type_id,
                               int64_t a,
                               int64_t b,
                               int64_t delta_num,
                               int64_t delta_den,
                               struct SesEstimate **out);

/**
 * `ε(L,x)`; `fibre_mult` is read only for [`SesPointKind::OnSingularFibre`].
 *
 * # Safety
 * `out` must be NULL or point to writable storage.
 */
enum SesStatus ses_epsilon_at_point(uint8_t type_id,
                                    int64_t a,
                                    int64_t b,
                                    enum SesPointKind kind,
                                    uint32_t fibre_mult,
                                    struct SesEstimate **out);

/**
 * # Safety
 * `e` must be a live handle from this library.
 */
enum SesEstimateKind ses_estimate_kind(const struct SesEstimate *e);

/**
 * Exact value as `num/den`. Fails with [`SesStatus::InvalidArgument`] when
 * the estimate is not exact.
 *
 * # Safety
 * `e` must be NULL or a live handle; `num`, `den` NULL or writable.
 */
enum SesStatus ses_estimate_value(const struct SesEstimate *e, int64_t *num, int64_t *den);

/**
 * Provenance label; free with [`ses_string_free`].
 *
 * # Safety
 * `e` must be a live handle from this library.
 */
char *ses_estimate_provenance(const struct SesEstimate *e);

/**
 * The estimate as one line of JSON; free with [`ses_string_free`].
 *
 * # Safety
 * `e` must be a live handle from this library.
 */
char *ses_estimate_json(const struct SesEstimate *e);

/**
 * # Safety
 * `e` must be NULL or a handle not yet freed.
 */
void ses_estimate_free(struct SesEstimate *e);

/**
 * Oracle bounds on the Seshadri constant at the given point class.
 *
 * # Safety
 * `out` must be NULL or point to writable storage.
 */
enum SesStatus ses_certify_point(uint8_t type_id,
                                 int64_t a,
                                 int64_t b,
                                 enum SesPointKind kind,
                                 uint32_t fibre_mult,
                                 uint32_t scan_limit,
                                 struct SesReport **out);

/**
 * Whether the oracle's lower and upper bounds coincide.
 *
 * # Safety
 * `r` must be a live handle from this library.
 */
bool ses_report_is_tight(const struct SesReport *r);

/**
 * The report as one line of JSON; free with [`ses_string_free`].
 *
 * # Safety
 * `r` must be a live handle from this library.
 */
char *ses_report_json(const struct SesReport *r);

/**
 * # Safety
 * `r` must be NULL or a handle not yet freed.
 */
void ses_report_free(struct SesReport *r);

/**
 * Fundamental solution of `q² - d·p² = 1` as decimal strings, since they
 * overflow 64 bits quickly. Free both with [`ses_string_free`].
 *
 * # Safety
 * `p`, `q` must be NULL or writable.
 */
enum SesStatus ses_pell_fundamental(uint64_t d, char **p, char **q);

/**
 * Checks `q² - d·p² = 1` for decimal strings such as those returned by
 * [`ses_pell_fundamental`].
 *
 * # Safety
 * `p`, `q` must be NULL or NUL-terminated strings.
 */
bool ses_pell_check(uint64_t d, const char *p, const char *q);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SESHADRI_H */
