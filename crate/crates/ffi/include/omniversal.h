#ifndef OMNIVERSAL_H
#define OMNIVERSAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome for one length of a report.
 */
typedef enum OmvLengthStatus {
  OMV_LENGTH_STATUS_ACHIEVED = 0,
  OMV_LENGTH_STATUS_PROVEN_ABSENT = 1,
  OMV_LENGTH_STATUS_FORBIDDEN = 2,
  OMV_LENGTH_STATUS_TIMEOUT = 3,
} OmvLengthStatus;

/**
 * Result code of every fallible call.
 */
typedef enum OmvStatus {
  OMV_STATUS_OK = 0,
  OMV_STATUS_NULL_POINTER = 1,
  OMV_STATUS_INVALID_ARGUMENT = 2,
  OMV_STATUS_INVALID_SQUARE = 3,
  OMV_STATUS_OUT_OF_RANGE = 4,
  OMV_STATUS_NOT_FOUND = 5,
  OMV_STATUS_TIMEOUT = 6,
  OMV_STATUS_INTERNAL = 7,
} OmvStatus;

/**
 * Verdict of a report. `Incomplete` means some length timed out.
 */
typedef enum OmvVerdict {
  OMV_VERDICT_INCOMPLETE = 0,
  OMV_VERDICT_OMNIVERSAL = 1,
  OMV_VERDICT_NEAR_OMNIVERSAL = 2,
  OMV_VERDICT_OTHER = 3,
} OmvVerdict;

/**
 * A finite group from the catalog.
 */
typedef struct OmvGroup OmvGroup;

/**
 * A spectrum report.
 */
typedef struct OmvReport OmvReport;

/**
 * A Latin square.
 */
typedef struct OmvSquare OmvSquare;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the last failed call on this thread into a new
 * string, or returns NULL if there is none.
 */
char *omv_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void omv_string_free(char *s);

/**
 * Builds a square from `n * n` row-major symbols in `0..n`.
 *
 * # Safety
 * `grid` must point to `n * n` readable values and `out` must be writable.
 */
enum OmvStatus omv_square_from_grid(const size_t *grid, size_t n, struct OmvSquare **out);

/**
 * Parses the text square format: the order, then one row per line.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum OmvStatus omv_square_parse(const char *text, struct OmvSquare **out);

/**
 * Order of the square, or 0 for NULL.
 *
 * # Safety
 * `sq` must be NULL or a live square handle.
 */
size_t omv_square_order(const struct OmvSquare *sq);

/**
 * Symbol at row `r`, column `c`.
 *
 * # Safety
 * `sq` must be a live square handle and `out` writable.
 */
enum OmvStatus omv_square_get(const struct OmvSquare *sq, size_t r, size_t c, size_t *out);

/**
 * Hex digest of the square's canonical bytes.
 *
 * # Safety
 * `sq` must be a live square handle and `out` writable.
 */
enum OmvStatus omv_square_hash(const struct OmvSquare *sq, char **out);

/**
 * Releases a square. NULL is ignored.
 *
 * # Safety
 * `sq` must come from this library and not have been freed.
 */
void omv_square_free(struct OmvSquare *sq);

/**
 * Looks up a catalog group by name, such as `"Z7"`, `"D8"` or `"Q16"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum OmvStatus omv_group_by_name(const char *name, struct OmvGroup **out);

/**
 * Order of the group, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live group handle.
 */
size_t omv_group_order(const struct OmvGroup *g);

/**
 * The Cayley table of the group as a new square.
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
enum OmvStatus omv_group_cayley_table(const struct OmvGroup *g, struct OmvSquare **out);

/**
 * Releases a group. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void omv_group_free(struct OmvGroup *g);

/**
 * The omniversal square `L*` of order `8m + 4q`, with `m >= 1` and `q` in `{0, 1}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum OmvStatus omv_build_l_star(size_t m, size_t q, struct OmvSquare **out);

/**
 * The near-omniversal square `M*` of order `4m + 2`, with `m >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum OmvStatus omv_build_m_star(size_t m, struct OmvSquare **out);

/**
 * Searches every length of the admissible range. `node_limit` bounds each
 * length's search; 0 means unlimited. On `Timeout` the report is still
 * written to `out` and must be freed.
 *
 * # Safety
 * `sq` must be a live square handle and `out` writable.
 */
enum OmvStatus omv_spectrum(const struct OmvSquare *sq,
                            uint64_t node_limit,
                            struct OmvReport **out);

/**
 * Classifies a group with the forbidding rules, constructions and searches.
 * `node_limit` as for [`omv_spectrum`].
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
enum OmvStatus omv_classify_group(const struct OmvGroup *g,
                                  uint64_t node_limit,
                                  struct OmvReport **out);

/**
 * The admissible length range `[lo, hi]` covered by the report.
 *
 * # Safety
 * `r` must be a live report handle; `lo` and `hi` must be writable.
 */
enum OmvStatus omv_report_range(const struct OmvReport *r, size_t *lo, size_t *hi);

/**
 * Status of one length.
 *
 * # Safety
 * `r` must be a live report handle and `out` writable.
 */
enum OmvStatus omv_report_status(const struct OmvReport *r, size_t len, enum OmvLengthStatus *out);

/**
 * The verdict; `mu` receives the missing length for near-omniversal
 * reports and 0 otherwise.
 *
 * # Safety
 * `r` must be a live report handle; `kind` and `mu` must be writable.
 */
enum OmvStatus omv_report_verdict(const struct OmvReport *r, enum OmvVerdict *kind, size_t *mu);

/**
 * Copies the witness for an achieved length into `buf` as `row, col, symbol`
 * triples. `written` receives the number of values the witness needs
 * (`3 * len`); if `cap` is smaller, nothing is copied and `OutOfRange` is returned.
 *
 * # Safety
 * `r` must be a live report handle, `written` writable, and `buf` valid for
 * `cap` writes (it may be NULL when `cap` is 0).
 */
enum OmvStatus omv_report_witness(const struct OmvReport *r,
                                  size_t len,
                                  size_t *buf,
                                  size_t cap,
                                  size_t *written);

/**
 * The report as JSON in the published schema.
 *
 * # Safety
 * `r` must be a live report handle and `out` writable.
 */
enum OmvStatus omv_report_to_json(const struct OmvReport *r, char **out);

/**
 * Releases a report. NULL is ignored.
 *
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void omv_report_free(struct OmvReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OMNIVERSAL_H */
