#ifndef MAXCURVES_H
#define MAXCURVES_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  /**
   * Arguments violate a documented precondition (Hasse bound, ranges).
   */
  MC_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The pair has the wrong classification for this operation.
   */
  MC_STATUS_WRONG_CLASSIFICATION = 2,
  /**
   * A certified computation ran out of precision.
   */
  MC_STATUS_PRECISION_EXHAUSTED = 3,
  /**
   * A proved guarantee failed re-verification (library bug).
   */
  MC_STATUS_INTERNAL_ERROR = 4,
  /**
   * A required pointer argument was null.
   */
  MC_STATUS_NULL_POINTER = 5,
} McStatus;

/**
 * Opaque list of maximal triples.
 */
typedef struct McTripleList McTripleList;

/**
 * Opaque list of u64 degrees.
 */
typedef struct McU64List McU64List;

/**
 * Classification of a pair: kind plus the root-of-unity order of the
 * normalized eigenvalue (0 for ordinary pairs).
 */
typedef struct McClassification {
  /**
   * 0 = ordinary, 1 = supersingular
   */
  uint8_t supersingular;
  /**
   * order of beta in {1,2,3,4,6,8,12}; 0 when ordinary
   */
  uint8_t order;
} McClassification;

/**
 * The degree set of a supersingular pair.
 */
typedef struct McProgression {
  /**
   * 1 when the progression part is empty
   */
  uint8_t empty;
  /**
   * progression offset k (degrees k, 3k, 5k, ...); 0 when empty
   */
  uint64_t offset;
  /**
   * progression modulus 2k; 0 when empty
   */
  uint64_t modulus;
  /**
   * 1 when the lone extra degree n = 1 applies
   */
  uint8_t has_exceptional;
} McProgression;

/**
 * One maximal triple.
 */
typedef struct McTriple {
  uint64_t q;
  int64_t a1;
  uint64_t n;
  /**
   * 0 = ordinary search, 1 = supersingular progression, 2 = direct check
   */
  uint8_t source;
} McTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Whether -a_n = floor(2 sqrt(q)^n); writes 1 or 0 to `out`.
 *
 * # Safety
 * `out` must be a valid pointer to a writable int.
 */
enum McStatus mc_is_maximal(uint64_t q, int64_t a1, uint64_t n, int *out);

/**
 * Classify (q, a1) as ordinary or supersingular-with-order.
 *
 * # Safety
 * `out` must be a valid pointer to a writable McClassification.
 */
enum McStatus mc_classify(uint64_t q, int64_t a1, struct McClassification *out);

/**
 * The exact degree set of a supersingular pair.
 *
 * # Safety
 * `out` must be a valid pointer to a writable McProgression.
 */
enum McStatus mc_supersingular_degrees(uint64_t q, int64_t a1, struct McProgression *out);

/**
 * ceil(N_q): ordinary maximal degrees for q satisfy n <= this value.
 *
 * # Safety
 * `out` must be a valid pointer to a writable u64.
 */
enum McStatus mc_max_degree(uint64_t q, uint64_t *out);

/**
 * The two candidate traces for degree-3 maximality over q >= 3.
 *
 * # Safety
 * `out2` must point to an array of at least two writable i64 values.
 */
enum McStatus mc_cubic_candidates(uint64_t q, int64_t *out2);

/**
 * All degrees n > 1 with -a_n = floor(2 sqrt(q)^n) for an ordinary pair,
 * as an opaque list (release with mc_u64_list_free).
 *
 * # Safety
 * `out` must be a valid pointer to a writable list-handle slot.
 */
enum McStatus mc_ordinary_degrees(uint64_t q, int64_t a1, struct McU64List **out);

/**
 * # Safety
 * `list` must be a handle returned by this library (or null).
 */
size_t mc_u64_list_len(const struct McU64List *list);

/**
 * Fetch one element; writes to `out` and returns Ok when in range.
 *
 * # Safety
 * `list` must be a live handle from this library; `out` must be writable.
 */
enum McStatus mc_u64_list_get(const struct McU64List *list, size_t index, uint64_t *out);

/**
 * # Safety
 * `list` must be a handle returned by this library, not yet freed.
 */
void mc_u64_list_free(struct McU64List *list);

/**
 * Enumerate maximal triples for prime powers in [q_min, q_max]; set
 * `include_supersingular` to also get the first degree of each non-empty
 * supersingular progression. Release the handle with mc_triple_list_free.
 *
 * # Safety
 * `out` must be a valid pointer to a writable list-handle slot.
 */
enum McStatus mc_search(uint64_t q_min,
                        uint64_t q_max,
                        int include_supersingular,
                        struct McTripleList **out);

/**
 * # Safety
 * `list` must be a handle returned by this library (or null).
 */
size_t mc_triple_list_len(const struct McTripleList *list);

/**
 * Fetch one triple; writes to `out` and returns Ok when in range.
 *
 * # Safety
 * `list` must be a live handle from this library; `out` must be writable.
 */
enum McStatus mc_triple_list_get(const struct McTripleList *list,
                                 size_t index,
                                 struct McTriple *out);

/**
 * # Safety
 * `list` must be a handle returned by this library, not yet freed.
 */
void mc_triple_list_free(struct McTripleList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAXCURVES_H */
