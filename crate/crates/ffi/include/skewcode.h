#ifndef SKEWCODE_H
#define SKEWCODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkcStatus {
  SKC_STATUS_OK = 0,
  SKC_STATUS_NULL_POINTER = 1,
  SKC_STATUS_PRECONDITION = 2,
  SKC_STATUS_PARSE = 3,
  SKC_STATUS_MATH = 4,
  SKC_STATUS_INTERNAL = 5,
} SkcStatus;

/**
 * A convolutional code built from a JSON descriptor.
 */
typedef struct SkcCode SkcCode;

/**
 * `F[x]/(x^n - 1)` with its factorization.
 */
typedef struct SkcRing SkcRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the ring for field literal `field` (e.g. `"GF(4)"`) and length `n`.
 *
 * # Safety
 * `field` must be a NUL-terminated string; out-pointers must be writable.
 */
enum SkcStatus skc_ring_new(const char *field, size_t n, struct SkcRing **out_ring);

/**
 * # Safety
 * `ring` must come from [`skc_ring_new`] and not be used afterwards. Null is ignored.
 */
void skc_ring_free(struct SkcRing *ring);

/**
 * # Safety
 * `ring` must be a live handle; out-pointers must be writable.
 */
enum SkcStatus skc_ring_num_factors(const struct SkcRing *ring, size_t *out_r);

/**
 * Degree of the `k`-th factor, `k` counted from 1.
 *
 * # Safety
 * `ring` must be a live handle; out-pointers must be writable.
 */
enum SkcStatus skc_ring_factor_degree(const struct SkcRing *ring, size_t k, size_t *out_deg);

/**
 * The `k`-th factor as a string, `k` counted from 1.
 *
 * # Safety
 * `ring` must be a live handle; out-pointers must be writable. Free the result with
 * [`skc_string_free`].
 */
enum SkcStatus skc_ring_factor_string(const struct SkcRing *ring, size_t k, char **out_str);

/**
 * Number of automorphisms of the ring; `SKC_STATUS_MATH` if it exceeds 64 bits.
 *
 * # Safety
 * `ring` must be a live handle; out-pointers must be writable.
 */
enum SkcStatus skc_ring_automorphism_count(const struct SkcRing *ring, uint64_t *out_count);

/**
 * Builds a code from a JSON descriptor (generator literal or recipe).
 *
 * # Safety
 * `json` must be a NUL-terminated string; out-pointers must be writable.
 */
enum SkcStatus skc_code_from_descriptor(const char *json, struct SkcCode **out_code);

/**
 * # Safety
 * `code` must come from [`skc_code_from_descriptor`] and not be used afterwards.
 * Null is ignored.
 */
void skc_code_free(struct SkcCode *code);

/**
 * Length `n`, dimension `k` and complexity `delta`. Any out-pointer may be null.
 *
 * # Safety
 * `code` must be a live handle; non-null out-pointers must be writable.
 */
enum SkcStatus skc_code_params(const struct SkcCode *code,
                               size_t *out_n,
                               size_t *out_k,
                               size_t *out_delta);

/**
 * Free distance by state-graph search; `state_cap` 0 selects the default cap.
 *
 * # Safety
 * `code` must be a live handle; out-pointers must be writable.
 */
enum SkcStatus skc_code_free_distance(const struct SkcCode *code,
                                      uint64_t state_cap,
                                      size_t *out_d);

/**
 * Generator matrix as JSON `{"rows", "cols", "entries"}`.
 *
 * # Safety
 * `code` must be a live handle; out-pointers must be writable. Free the result with
 * [`skc_string_free`].
 */
enum SkcStatus skc_code_generator_json(const struct SkcCode *code, char **out_str);

/**
 * Field size of the code's alphabet.
 *
 * # Safety
 * `code` must be a live handle; out-pointers must be writable.
 */
enum SkcStatus skc_code_field_size(const struct SkcCode *code, uint32_t *out_q);

/**
 * # Safety
 * out-pointers must be writable.
 */
enum SkcStatus skc_singleton_bound(size_t n, size_t k, size_t delta, size_t *out_b);

/**
 * # Safety
 * out-pointers must be writable.
 */
enum SkcStatus skc_griesmer_bound(size_t n,
                                  size_t k,
                                  size_t delta,
                                  size_t m,
                                  uint32_t q,
                                  size_t *out_b);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void skc_string_free(char *s);

/**
 * Message for the last failed call on this thread, empty after a success.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *skc_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SKEWCODE_H */
