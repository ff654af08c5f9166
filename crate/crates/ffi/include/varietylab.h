#ifndef VARIETYLAB_H
#define VARIETYLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; `VL_OK` is zero.
 */
typedef enum VlStatus {
  VL_OK = 0,
  VL_DOMAIN_ERROR = 1,
  VL_CAP_EXCEEDED = 2,
  VL_PARSE_ERROR = 3,
  VL_IO_ERROR = 4,
  VL_NULL_POINTER = 5,
  VL_INVALID_UTF8 = 6,
  VL_PANIC = 7,
} VlStatus;

/**
 * Opaque algebra handle.
 */
typedef struct VlAlgebra VlAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *vl_version(void);

/**
 * Message of the last failing call on this thread (never NULL).
 */
const char *vl_last_error_message(void);

/**
 * Parse an algebra from its JSON form `{q, p, k, dim, table}`.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum VlStatus vl_algebra_from_json(const char *json, struct VlAlgebra **out);

/**
 * One of the built-in example algebras (`eminvar`, `evsa`, `n2`, `gf2`, `solvable3`).
 *
 * # Safety
 * `name` must be NUL-terminated; `out` must be writable.
 */
enum VlStatus vl_algebra_builtin(const char *name, struct VlAlgebra **out);

/**
 * Release a handle; NULL is ignored.
 *
 * # Safety
 * `a` must come from this library and not be used afterwards.
 */
void vl_algebra_free(struct VlAlgebra *a);

/**
 * The JSON form of an algebra; release with `vl_string_free`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_to_json(const struct VlAlgebra *a, char **out);

/**
 * Release a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void vl_string_free(char *s);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_dim(const struct VlAlgebra *a, size_t *out);

/**
 * Order `q` of the ground field.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_field_order(const struct VlAlgebra *a, size_t *out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_is_simple(const struct VlAlgebra *a, bool *out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_is_minimal(const struct VlAlgebra *a, bool *out);

/**
 * Nilpotency class, or 0 if the algebra is not nilpotent.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_nilpotency_class(const struct VlAlgebra *a, size_t *out);

/**
 * Solvable length, or 0 if the algebra is not solvable.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_algebra_solvable_length(const struct VlAlgebra *a, size_t *out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_automorphism_group_order(const struct VlAlgebra *a, size_t *out);

/**
 * `dim F_n(var A)`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum VlStatus vl_free_dimension(const struct VlAlgebra *a, size_t rank, size_t *out);

/**
 * Whether the polynomial (e.g. `"x1 x2 - x2 x1"`) is an identity of the algebra.
 *
 * # Safety
 * `a` must be a live handle; `poly` NUL-terminated; `out` writable.
 */
enum VlStatus vl_is_identity(const struct VlAlgebra *a, const char *poly, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VARIETYLAB_H */
