#ifndef HIRZEBRUCH_H
#define HIRZEBRUCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HzLevel {
  HZ_LEVEL_DEGENERATE = 0,
  HZ_LEVEL_REGENERATED = 1,
} HzLevel;

typedef enum HzStatus {
  HZ_STATUS_OK = 0,
  HZ_STATUS_NULL_POINTER = 1,
  HZ_STATUS_INVALID_ARGUMENT = 2,
  HZ_STATUS_INVALID_PARAMS = 3,
  HZ_STATUS_NON_GENERIC = 4,
  HZ_STATUS_PARSE = 5,
  HZ_STATUS_IDENTITY_VIOLATION = 6,
  /**
   * A value does not fit the fixed-width C type.
   */
  HZ_STATUS_OVERFLOW = 7,
  HZ_STATUS_INTERNAL = 8,
} HzStatus;

typedef enum HzThreePointMode {
  HZ_THREE_POINT_MODE_AUTO = 0,
  HZ_THREE_POINT_MODE_LITERAL = 1,
  HZ_THREE_POINT_MODE_CUBED = 2,
} HzThreePointMode;

/**
 * Degeneration complex of `F_k` embedded by `(a, b)`.
 */
typedef struct HzComplex HzComplex;

/**
 * Ordered braid monodromy factorization.
 */
typedef struct HzFactorization HzFactorization;

typedef struct HzCounts {
  size_t planes;
  size_t lines;
  size_t vertices;
} HzCounts;

typedef struct HzRational {
  int64_t num;
  int64_t den;
} HzRational;

/**
 * Each value equals its coefficient times `factorial_index!`.
 */
typedef struct HzChern {
  uint64_t factorial_index;
  struct HzRational c1sq;
  struct HzRational c2;
  struct HzRational signature;
} HzChern;

typedef struct HzClassification {
  bool general_type;
  bool spin;
  bool simply_connected;
  /**
   * −1, 0 or 1.
   */
  int8_t signature_sign;
  /**
   * Whether the flags agree with the criteria in terms of the branch curve
   * degree and the positivity table.
   */
  bool consistent;
} HzClassification;

/**
 * `(Z_torsion_order)^rank`; trivial when `torsion_order` is 1.
 */
typedef struct HzGroup {
  uint64_t torsion_order;
  uint64_t rank;
} HzGroup;

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *hz_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void hz_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum HzStatus hz_complex_new(uint32_t k, uint32_t a, uint32_t b, struct HzComplex **out);

/**
 * # Safety
 * `c` must be null or a handle from [`hz_complex_new`] not yet freed.
 */
void hz_complex_free(struct HzComplex *c);

/**
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum HzStatus hz_complex_counts(const struct HzComplex *c, struct HzCounts *out);

/**
 * Writes a newly allocated JSON description of the complex.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum HzStatus hz_complex_to_json(const struct HzComplex *c, char **out);

/**
 * Builds the factorization at the given level. `mode` and `seed` apply to
 * the regenerated and degenerate levels respectively.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum HzStatus hz_factorize(const struct HzComplex *c,
                           enum HzLevel level,
                           enum HzThreePointMode mode,
                           uint64_t seed,
                           struct HzFactorization **out);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` valid for writes.
 */
enum HzStatus hz_factorization_from_json(const char *json, struct HzFactorization **out);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void hz_factorization_free(struct HzFactorization *f);

/**
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum HzStatus hz_factorization_to_json(const struct HzFactorization *f, char **out);

/**
 * Number of factors and strands.
 *
 * # Safety
 * `f` must be a live handle; the out-pointers must be valid for writes.
 */
enum HzStatus hz_factorization_shape(const struct HzFactorization *f,
                                     size_t *factors,
                                     size_t *strands);

/**
 * `p(p−1)` minus the total claimed degree.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum HzStatus hz_factorization_residual(const struct HzFactorization *f, int64_t *out);

/**
 * Whether the ordered product equals the full twist.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum HzStatus hz_factorization_verify(const struct HzFactorization *f, bool *out);

/**
 * Equality in `B_n` of two words given as signed generator indices.
 *
 * # Safety
 * `u` and `v` must point to `u_len` and `v_len` readable values (or be null
 * when the length is 0); `out` must be valid for writes.
 */
enum HzStatus hz_braid_equal(size_t n,
                             const int32_t *u,
                             size_t u_len,
                             const int32_t *v,
                             size_t v_len,
                             bool *out);

/**
 * Chern numbers and signature of `Y_k(a,b)` as coefficients of `n!`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HzStatus hz_chern(uint32_t k, uint32_t a, uint32_t b, struct HzChern *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum HzStatus hz_classify(uint32_t k, uint32_t a, uint32_t b, struct HzClassification *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum HzStatus hz_pi1(uint32_t k, uint32_t a, uint32_t b, struct HzGroup *out);

#endif  /* HIRZEBRUCH_H */
