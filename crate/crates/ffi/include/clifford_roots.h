#ifndef CLIFFORD_ROOTS_H
#define CLIFFORD_ROOTS_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum CrStatus {
  CR_STATUS_OK = 0,
  CR_STATUS_NULL_POINTER = 1,
  CR_STATUS_INVALID_UTF8 = 2,
  CR_STATUS_PARSE = 3,
  CR_STATUS_INVALID_INPUT = 4,
  CR_STATUS_NOT_A_SUBSYSTEM = 5,
  CR_STATUS_SIZE_EXCEEDED = 6,
  CR_STATUS_UNRECOGNIZED = 7,
  CR_STATUS_UNKNOWN_CLAIM = 8,
  CR_STATUS_INTERNAL = 99,
} CrStatus;

/**
 * Opaque set of vectors with its bilinear form.
 */
typedef struct CrRootSet CrRootSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *cr_last_error(void);

/**
 * Parses `{"basis_gram": .., "vectors": ..}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CrStatus cr_root_set_from_json(const char *json, struct CrRootSet **out);

/**
 * Builds the catalog system of type `family` (a letter A-G) and `rank`.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CrStatus cr_catalog_build(const char *family, size_t rank, struct CrRootSet **out);

/**
 * # Safety
 * `set` must be a handle from this library, or NULL.
 */
void cr_root_set_free(struct CrRootSet *set);

/**
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum CrStatus cr_root_set_len(const struct CrRootSet *set, size_t *out);

/**
 * Rank of the span.
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum CrStatus cr_root_set_rank(const struct CrRootSet *set, size_t *out);

/**
 * JSON encoding of the set; free the string with [`cr_string_free`].
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum CrStatus cr_root_set_to_json(const struct CrRootSet *set, char **out);

/**
 * Smallest root system containing `set`. Fails with
 * [`CrStatus::NotASubsystem`] or [`CrStatus::SizeExceeded`].
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum CrStatus cr_closure(const struct CrRootSet *set, size_t max_size, struct CrRootSet **out);

/**
 * Whether the closure minus `set` is a root system.
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum CrStatus cr_is_admissible(const struct CrRootSet *set, size_t max_size, bool *out);

/**
 * Identification as JSON, e.g. `{"components":[..],"total_roots":24}`.
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum CrStatus cr_identify(const struct CrRootSet *set, char **out);

/**
 * Runs one claim (for example `"theorem-case-IV"` or `"r14-exclusion"`)
 * and writes its JSON report. `as_expected` receives whether the status
 * matched the expected one.
 *
 * # Safety
 * `claim` must be a NUL-terminated string; `out` and `as_expected` valid pointers.
 */
enum CrStatus cr_verify(const char *claim, char **out, bool *as_expected);

/**
 * # Safety
 * `s` must be a string returned by this library, or NULL.
 */
void cr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLIFFORD_ROOTS_H */
