#ifndef RINGCODES_H
#define RINGCODES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RcGriesmerStatus {
  RC_GRIESMER_STATUS_GRIESMER_CODE = 0,
  RC_GRIESMER_STATUS_CERTIFIED_OPTIMAL = 1,
  RC_GRIESMER_STATUS_INCONCLUSIVE = 2,
  RC_GRIESMER_STATUS_INFEASIBLE_PARAMETERS = 3,
} RcGriesmerStatus;

typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  RC_STATUS_INVALID_ARGUMENT = 2,
  RC_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * Internal consistency check failed while building or analysing a code.
   */
  RC_STATUS_CONSTRUCTION_FAILED = 4,
  RC_STATUS_BUFFER_TOO_SMALL = 5,
  RC_STATUS_PANIC = 6,
} RcStatus;

/**
 * Opaque code handle.
 */
typedef struct RcCode RcCode;

/**
 * Gray image parameters. `has_d` is false for the zero code.
 */
typedef struct RcBinaryParams {
  uint64_t n;
  uint32_t k;
  uint64_t d;
  bool has_d;
} RcBinaryParams;

typedef struct RcGriesmerCheck {
  uint64_t sum_at_d;
  uint64_t sum_at_d_plus_1;
  enum RcGriesmerStatus status;
} RcGriesmerCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the code for variant `1..=5` (T1..T5). `budget == 0` uses
 * `RINGCODES_WORK_BUDGET` or the library default. An empty defining set
 * yields a degenerate handle of length 0.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum RcStatus rc_code_new(uint32_t variant,
                          uint8_t m,
                          uint32_t m_mask,
                          uint32_t n_mask,
                          uint64_t budget,
                          struct RcCode **out);

/**
 * # Safety
 * `code` must be null or a handle from `rc_code_new` not yet freed.
 */
void rc_code_free(struct RcCode *code);

/**
 * Length `|D|` of the code over I; 0 for null.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint64_t rc_code_length(const struct RcCode *code);

/**
 * Number of distinct codewords; 0 for null.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint64_t rc_code_size(const struct RcCode *code);

/**
 * Messages mapping to the zero codeword; 0 for null.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint64_t rc_code_kernel_size(const struct RcCode *code);

/**
 * True when the defining set is empty or the code is zero.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
bool rc_code_is_degenerate(const struct RcCode *code);

/**
 * Lee weight distribution of the distinct codewords, ascending by weight.
 * `*out_len` always receives the number of entries; if `capacity` is too
 * small nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `weights` and `counts` must each hold `capacity` elements (or be null
 * with `capacity == 0`); `out_len` must be valid.
 */
enum RcStatus rc_code_weight_distribution(const struct RcCode *code,
                                          uint32_t *weights,
                                          uint64_t *counts,
                                          size_t capacity,
                                          size_t *out_len);

/**
 * # Safety
 * `code` must be a live handle and `out` valid.
 */
enum RcStatus rc_code_binary_params(const struct RcCode *code, struct RcBinaryParams *out);

/**
 * Lee weight enumerator such as `X^32 + 3X^16Y^16`; release with
 * `rc_string_free`. Null on a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
char *rc_code_enumerator(const struct RcCode *code);

/**
 * Runs every analysis and writes the JSON report to `*out` (release with
 * `rc_string_free`).
 *
 * # Safety
 * `code` must be a live handle and `out` valid.
 */
enum RcStatus rc_code_analysis_json(const struct RcCode *code, char **out);

/**
 * Griesmer test for a binary `[n, k, d]` code.
 *
 * # Safety
 * `out` must be valid.
 */
enum RcStatus rc_griesmer_check(uint64_t n, uint32_t k, uint64_t d, struct RcGriesmerCheck *out);

/**
 * Sum in I. Elements are coded 0 = 0, 1 = a, 2 = b, 3 = c.
 *
 * # Safety
 * `out` must be valid.
 */
enum RcStatus rc_ring_add(uint8_t a, uint8_t b, uint8_t *out);

/**
 * Product in I, same coding as `rc_ring_add`.
 *
 * # Safety
 * `out` must be valid.
 */
enum RcStatus rc_ring_mul(uint8_t a, uint8_t b, uint8_t *out);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *rc_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void rc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RINGCODES_H */
