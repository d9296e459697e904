#ifndef QUIVERFORGE_H
#define QUIVERFORGE_H

/* Generated by cbindgen from the quiverforge-ffi crate. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum QfStatus {
  QF_STATUS_OK = 0,
  /**
   * Null pointer or non-UTF-8 string argument.
   */
  QF_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed input data.
   */
  QF_STATUS_INPUT_ERROR = 2,
  /**
   * Input outside an operation's domain, e.g. a non-real root.
   */
  QF_STATUS_DOMAIN_ERROR = 3,
  /**
   * A construction step failed its internal checks.
   */
  QF_STATUS_CONSTRUCTION_ERROR = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  QF_STATUS_INTERNAL_ERROR = 5,
} QfStatus;

/**
 * Opaque representation handle.
 */
typedef struct QfRepresentation QfRepresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next `qf_` call on this thread.
 */
const char *qf_last_error(void);

/**
 * Constructs the representation of the real root `root[0..len]` of
 * `Q(f,g,h)`. `field` is `"q"`, `"fp:<p>"` or null for the rationals.
 *
 * # Safety
 * `root` must point to `len` readable values; `field` must be null or a
 * NUL-terminated string; `out` must be writable.
 */
enum QfStatus qf_construct(uint32_t f,
                           uint32_t g,
                           uint32_t h,
                           const int64_t *root,
                           size_t len,
                           const char *field,
                           struct QfRepresentation **out);

/**
 * Parses a representation from its JSON encoding.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QfStatus qf_rep_from_json(const char *json, struct QfRepresentation **out);

/**
 * # Safety
 * `rep_handle` must be a live handle; `out` must be writable. Free the string with
 * [`qf_string_free`].
 */
enum QfStatus qf_rep_to_json(const struct QfRepresentation *rep_handle, char **out);

/**
 * Number of vertices of the representation's quiver.
 *
 * # Safety
 * `rep_handle` must be a live handle; `out` must be writable.
 */
enum QfStatus qf_rep_vertex_count(const struct QfRepresentation *rep_handle, size_t *out);

/**
 * Copies the dimension vector into `dims[0..cap]`; `cap` must be at least
 * the vertex count.
 *
 * # Safety
 * `rep_handle` must be a live handle; `dims` must have room for `cap` values.
 */
enum QfStatus qf_rep_dims(const struct QfRepresentation *rep_handle, size_t *dims, size_t cap);

/**
 * # Safety
 * `rep_handle` must be a live handle; `out` must be writable.
 */
enum QfStatus qf_end_dim(const struct QfRepresentation *rep_handle, size_t *out);

/**
 * `dim Hom(x, y)` and `dim Ext(x, y)`.
 *
 * # Safety
 * `x`, `y` must be live handles; `hom`, `ext` must be writable.
 */
enum QfStatus qf_hom_ext(const struct QfRepresentation *x,
                         const struct QfRepresentation *y,
                         size_t *hom,
                         size_t *ext);

/**
 * # Safety
 * `rep_handle` must be a live handle; `out` must be writable.
 */
enum QfStatus qf_is_maximal_rank(const struct QfRepresentation *rep_handle, bool *out);

/**
 * Whether the coefficient quiver in the stored basis is a tree.
 *
 * # Safety
 * `rep_handle` must be a live handle; `out` must be writable.
 */
enum QfStatus qf_is_tree(const struct QfRepresentation *rep_handle, bool *out);

/**
 * # Safety
 * `rep_handle` must be a live handle; `out` must be writable. Free the string with
 * [`qf_string_free`].
 */
enum QfStatus qf_export_dot(const struct QfRepresentation *rep_handle, char **out);

/**
 * Runs the catalog and returns its JSON report; `pass` receives the overall
 * verdict.
 *
 * # Safety
 * `field` must be null or a NUL-terminated string; `out` and `pass` must be
 * writable. Free the string with [`qf_string_free`].
 */
enum QfStatus qf_catalog(uint32_t f,
                         uint32_t g,
                         uint32_t h,
                         int64_t bound,
                         const char *field,
                         size_t jobs,
                         char **out,
                         bool *pass);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `rep_handle` must be null or a handle not yet freed.
 */
void qf_rep_free(struct QfRepresentation *rep_handle);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void qf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVERFORGE_H */
