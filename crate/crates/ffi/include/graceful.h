#ifndef GRACEFUL_FFI_H
#define GRACEFUL_FFI_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_POINTER = 1,
  GF_STATUS_INVALID_UTF8 = 2,
  GF_STATUS_PARSE = 3,
  GF_STATUS_CAPACITY = 4,
  GF_STATUS_INVALID_VERTEX = 5,
  GF_STATUS_OUT_OF_RANGE = 6,
  GF_STATUS_BUFFER_TOO_SMALL = 7,
  GF_STATUS_CONSISTENCY = 8,
  GF_STATUS_PANIC = 9,
} GfStatus;

/**
 * Opaque handle to an immutable tree shape.
 */
typedef struct GfShape GfShape;

/**
 * Summary of a streaming gracefulness and separator check.
 */
typedef struct GfVerifyReport {
  bool graceful;
  bool vertex_labels_distinct;
  bool labels_in_range;
  bool edge_labels_complete;
  /**
   * True when some k weakly separates every edge; `weak_k_lo..=weak_k_hi`.
   */
  bool weak_feasible;
  uint64_t weak_k_lo;
  uint64_t weak_k_hi;
  /**
   * True when k_1 = 2, in which case `claimed_k` is h_2.
   */
  bool has_claimed_k;
  uint64_t claimed_k;
  bool claim_holds;
  bool strict_alpha_feasible;
} GfVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a shape from `len` daughter degrees.
 *
 * # Safety
 * `degrees` must point to `len` readable values (it may be NULL when `len`
 * is 0) and `out` must be writable. On success `*out` owns a handle that
 * must be released with [`gf_shape_free`].
 */
enum GfStatus gf_shape_new(const uint64_t *degrees, size_t len, struct GfShape **out);

/**
 * Parses a comma-separated degree sequence such as `"2,3,4"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum GfStatus gf_shape_parse(const char *text, struct GfShape **out);

/**
 * Releases a shape. NULL is ignored.
 *
 * # Safety
 * `shape` must be NULL or a handle not yet freed.
 */
void gf_shape_free(struct GfShape *shape);

/**
 * Number of levels q, or 0 for NULL.
 *
 * # Safety
 * `shape` must be NULL or a live handle.
 */
size_t gf_shape_levels(const struct GfShape *shape);

/**
 * |V|, or 0 for NULL.
 *
 * # Safety
 * `shape` must be NULL or a live handle.
 */
uint64_t gf_shape_vertex_count(const struct GfShape *shape);

/**
 * |E|, or 0 for NULL.
 *
 * # Safety
 * `shape` must be NULL or a live handle.
 */
uint64_t gf_shape_edge_count(const struct GfShape *shape);

/**
 * Writes h_level (1-based level) to `out`.
 *
 * # Safety
 * `shape` must be a live handle and `out` writable.
 */
enum GfStatus gf_shape_level_size(const struct GfShape *shape, size_t level, uint64_t *out);

/**
 * Label of the vertex with edge sequence `edges[0..len]` (len 0 = root).
 *
 * # Safety
 * `shape` must be a live handle, `edges` must point to `len` values (or be
 * NULL when `len` is 0) and `out` must be writable.
 */
enum GfStatus gf_label_vertex(const struct GfShape *shape,
                              const uint64_t *edges,
                              size_t len,
                              uint64_t *out);

/**
 * Label of the edge between a non-root vertex and its parent.
 *
 * # Safety
 * As for [`gf_label_vertex`].
 */
enum GfStatus gf_edge_label(const struct GfShape *shape,
                            const uint64_t *edges,
                            size_t len,
                            uint64_t *out);

/**
 * Decodes label `m` into the edge sequence of its vertex.
 *
 * # Safety
 * `shape` must be a live handle, `out_edges` must have room for `capacity`
 * values and `out_len` must be writable.
 */
enum GfStatus gf_invert_label(const struct GfShape *shape,
                              uint64_t m,
                              uint64_t *out_edges,
                              size_t capacity,
                              size_t *out_len);

/**
 * Writes all |V| labels in breadth-first vertex order.
 *
 * # Safety
 * `shape` must be a live handle, `out` must have room for `capacity` values
 * and `out_len` must be writable.
 */
enum GfStatus gf_label_all(const struct GfShape *shape,
                           uint64_t *out,
                           size_t capacity,
                           size_t *out_len);

/**
 * Streams the closed-form labelling through the verifier and fills `out`.
 *
 * # Safety
 * `shape` must be a live handle and `out` writable.
 */
enum GfStatus gf_verify(const struct GfShape *shape, struct GfVerifyReport *out);

/**
 * The zig-zag labelling 0, n-1, 1, n-2, ... of a path on `n` vertices.
 *
 * # Safety
 * `out` must have room for `capacity` values and `out_len` must be writable.
 */
enum GfStatus gf_canonical_path_labelling(uint64_t n,
                                          uint64_t *out,
                                          size_t capacity,
                                          size_t *out_len);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gf_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *gf_status_str(enum GfStatus status);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRACEFUL_FFI_H */
