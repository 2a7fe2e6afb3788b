#ifndef EGN_H
#define EGN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EgnStatus {
  EGN_STATUS_OK = 0,
  EGN_STATUS_NULL_POINTER = 1,
  EGN_STATUS_INVALID_UTF8 = 2,
  EGN_STATUS_PARSE = 3,
  EGN_STATUS_INVALID_ARGUMENT = 4,
  EGN_STATUS_GUARD_EXCEEDED = 5,
  EGN_STATUS_IO = 6,
  EGN_STATUS_NUMERICAL = 7,
  EGN_STATUS_PANIC = 8,
} EgnStatus;

typedef enum EgnVerdict {
  EGN_VERDICT_STRICT_NASH = 0,
  EGN_VERDICT_NASH_ONLY = 1,
  EGN_VERDICT_NOT_NASH = 2,
} EgnVerdict;

typedef enum EgnFilter {
  EGN_FILTER_SNE = 0,
  EGN_FILTER_NE = 1,
  EGN_FILTER_ALL = 2,
} EgnFilter;

/**
 * Opaque handle to a validated instance.
 */
typedef struct EgnInstance EgnInstance;

/**
 * Opaque list of `(profile index, verdict)` pairs.
 */
typedef struct EgnProfileList EgnProfileList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null if none. Valid
 * until the next failing call on the same thread.
 */
const char *egn_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *egn_version(void);

/**
 * Parses an instance from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum EgnStatus egn_instance_from_json(const char *json, struct EgnInstance **out);

/**
 * Loads an instance from a JSON file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum EgnStatus egn_instance_load(const char *path, struct EgnInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `inst` must come from this library and not be used afterwards.
 */
void egn_instance_free(struct EgnInstance *inst);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t egn_instance_vertex_count(const struct EgnInstance *inst);

/**
 * Classifies one pure profile. When `lambdas` is non-null it receives the
 * `λ_v` of every vertex and `lambdas_len` must be at least the vertex count.
 *
 * # Safety
 * `inst` must be a live handle, `verdict` writable, and `lambdas` null or
 * valid for `lambdas_len` writes.
 */
enum EgnStatus egn_classify(const struct EgnInstance *inst,
                            uint64_t profile,
                            enum EgnVerdict *verdict,
                            double *lambdas,
                            size_t lambdas_len);

/**
 * Strict and total Nash counts over every pure profile.
 *
 * # Safety
 * `inst` must be a live handle and both outputs writable.
 */
enum EgnStatus egn_count_equilibria(const struct EgnInstance *inst,
                                    size_t jobs,
                                    uint64_t *sne,
                                    uint64_t *ne);

/**
 * Lists every profile passing `filter`, in ascending index order.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum EgnStatus egn_enumerate(const struct EgnInstance *inst,
                             enum EgnFilter filter,
                             bool prune,
                             size_t jobs,
                             struct EgnProfileList **out);

/**
 * Number of entries, or 0 for a null list.
 *
 * # Safety
 * `list` must be null or a live handle.
 */
size_t egn_profile_list_len(const struct EgnProfileList *list);

/**
 * Reads entry `i`.
 *
 * # Safety
 * `list` must be a live handle and both outputs writable.
 */
enum EgnStatus egn_profile_list_get(const struct EgnProfileList *list,
                                    size_t i,
                                    uint64_t *profile,
                                    enum EgnVerdict *verdict);

/**
 * Releases a list. Null is ignored.
 *
 * # Safety
 * `list` must come from this library and not be used afterwards.
 */
void egn_profile_list_free(struct EgnProfileList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EGN_H */
