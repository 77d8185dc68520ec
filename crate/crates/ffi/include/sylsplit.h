#ifndef SYLSPLIT_H
#define SYLSPLIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SYL_MODE_WGS = 0,
  SYL_MODE_ZF = 1,
  SYL_MODE_ALL = 2,
} SylMode;

/**
 * Result codes.
 */
typedef enum {
  SYL_STATUS_OK = 0,
  SYL_STATUS_NULL_POINTER = 1,
  SYL_STATUS_INVALID_UTF8 = 2,
  SYL_STATUS_PARSE = 3,
  SYL_STATUS_INVALID_ARGUMENT = 4,
  SYL_STATUS_DEGREE_MISMATCH = 5,
  SYL_STATUS_NOT_SUBGROUP = 6,
  SYL_STATUS_NOT_MEMBER = 7,
  SYL_STATUS_RESOURCE = 8,
  SYL_STATUS_INTERNAL = 9,
  SYL_STATUS_PANIC = 10,
} SylStatus;

typedef enum {
  SYL_VERDICT_VERIFIED = 0,
  SYL_VERDICT_COUNTEREXAMPLE = 1,
  SYL_VERDICT_HYPOTHESIS_NOT_SATISFIED = 2,
  SYL_VERDICT_ERROR = 3,
} SylVerdict;

/**
 * A permutation group.
 */
typedef struct SylGroup SylGroup;

/**
 * The analysis of one group at one prime.
 */
typedef struct SylReport SylReport;

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *syl_last_error(void);

/**
 * Builds the group on `degree` points generated by `count` cycle-notation strings.
 *
 * # Safety
 * `generators` must point to `count` valid C strings (it may be null when
 * `count` is 0) and `out` must be writable.
 */
SylStatus syl_group_new(size_t degree, const char *const *generators, size_t count, SylGroup **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed; null is ignored.
 */
void syl_group_free(SylGroup *g);

/**
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
SylStatus syl_group_order(const SylGroup *g, uint64_t *out);

/**
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
SylStatus syl_group_degree(const SylGroup *g, size_t *out);

/**
 * Membership of a permutation in cycle notation.
 *
 * # Safety
 * `g` must be a live group handle, `perm` a C string and `out` writable.
 */
SylStatus syl_group_contains(const SylGroup *g, const char *perm, bool *out);

/**
 * A Sylow `p`-subgroup, as a new handle.
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
SylStatus syl_group_sylow(const SylGroup *g, uint64_t p, SylGroup **out);

/**
 * The center, as a new handle.
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
SylStatus syl_group_center(const SylGroup *g, SylGroup **out);

/**
 * `W_G(S)` for a Sylow subgroup `s` of `g`, as a new handle.
 *
 * # Safety
 * `g` and `s` must be live group handles and `out` writable.
 */
SylStatus syl_weakly_closed_subgroup(const SylGroup *g, const SylGroup *s, SylGroup **out);

/**
 * Analyzes `g` at the prime `p`. Analysis failures are reported inside
 * the record (verdict `error`), not through the status.
 *
 * # Safety
 * `g` must be a live group handle, `name` a C string and `out` writable.
 */
SylStatus syl_analyze(const SylGroup *g,
                      const char *name,
                      uint64_t p,
                      SylMode mode,
                      SylReport **out);

/**
 * The built-in counterexample at `p = 2`.
 *
 * # Safety
 * `out` must be writable.
 */
SylStatus syl_example_a6(SylReport **out);

/**
 * # Safety
 * `r` must be a live report handle and `out` writable.
 */
SylStatus syl_report_verdict(const SylReport *r, SylVerdict *out);

/**
 * The record as a one-element JSON array, in the CLI's format.
 *
 * # Safety
 * `r` must be a live report handle and `out` writable. Free the string
 * with `syl_string_free`.
 */
SylStatus syl_report_to_json(const SylReport *r, char **out);

/**
 * # Safety
 * `r` must come from this library and not have been freed; null is ignored.
 */
void syl_report_free(SylReport *r);

/**
 * # Safety
 * `s` must be a string returned by this library; null is ignored.
 */
void syl_string_free(char *s);

#endif  /* SYLSPLIT_H */
