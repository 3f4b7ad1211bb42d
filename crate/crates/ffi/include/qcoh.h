#ifndef QCOH_H
#define QCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum QcohStatus {
  QCOH_STATUS_OK = 0,
  QCOH_STATUS_NULL_POINTER = 1,
  QCOH_STATUS_INVALID_ARGUMENT = 2,
  QCOH_STATUS_UNKNOWN_MODEL = 3,
  QCOH_STATUS_INVALID_MODEL = 4,
  QCOH_STATUS_TABLE_MISS = 5,
  QCOH_STATUS_INCONSISTENT = 6,
  QCOH_STATUS_PARSE = 7,
  QCOH_STATUS_PANIC = 8,
} QcohStatus;

// A validated model.
typedef struct QcohModel QcohModel;

// A table of invariants for one model.
typedef struct QcohTable QcohTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. Valid until the
// next failing call on the same thread.
const char *qcoh_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void qcoh_string_free(char *s);

// Built-in model by name (`p1`, `p2`, `p3`, `pN`, `q3`, `p1xp1`, or `pr`
// with `r > 0`).
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum QcohStatus qcoh_model_builtin(const char *name, uint32_t r, struct QcohModel **out);

// Model from its JSON description.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum QcohStatus qcoh_model_from_json(const char *json, struct QcohModel **out);

// # Safety
// `model` must come from this library and not have been freed.
void qcoh_model_free(struct QcohModel *model);

// Number of basis classes, or 0 for a null handle.
//
// # Safety
// `model` must be null or a live handle.
size_t qcoh_model_rank(const struct QcohModel *model);

// # Safety
// `model` must be null or a live handle.
uint32_t qcoh_model_dimension(const struct QcohModel *model);

// Plane-curve counts through degree `d_max`.
//
// # Safety
// `out` must be writable.
enum QcohStatus qcoh_nd_plane(uint32_t d_max, struct QcohTable **out);

// Recursion table for `space` = `"p3"` or `"q3"` through degree `d_max`.
//
// # Safety
// `space` must be a NUL-terminated string; `out` must be writable.
enum QcohStatus qcoh_fano3_solve(const char *space, uint32_t d_max, struct QcohTable **out);

// Associativity solver from the built-in seeds through c1-degree `c1_max`.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum QcohStatus qcoh_wdvv_solve(const struct QcohModel *model,
                                uint32_t c1_max,
                                struct QcohTable **out);

// # Safety
// `table` must come from this library and not have been freed.
void qcoh_table_free(struct QcohTable *table);

// Number of stored invariants, or 0 for a null handle.
//
// # Safety
// `table` must be null or a live handle.
size_t qcoh_table_len(const struct QcohTable *table);

// Stored invariant for class `beta` and insertion multidegree `ins`, as a
// decimal string.
//
// # Safety
// Arrays must hold the given number of elements; `out` must be writable.
enum QcohStatus qcoh_table_lookup(const struct QcohTable *table,
                                  const uint32_t *beta,
                                  size_t beta_len,
                                  const uint32_t *ins,
                                  size_t ins_len,
                                  char **out);

// `I_beta(T_{classes[0]} ... T_{classes[n-1]})` as a decimal string.
//
// # Safety
// Handles must be live; arrays must hold the given number of elements;
// `out` must be writable.
enum QcohStatus qcoh_gw_invariant(const struct QcohModel *model,
                                  const struct QcohTable *table,
                                  const uint32_t *beta,
                                  size_t beta_len,
                                  const size_t *classes,
                                  size_t n,
                                  char **out);

// Table entries as a JSON array of `{beta, insertions, value}`.
//
// # Safety
// `table` must be a live handle; `out` must be writable.
enum QcohStatus qcoh_table_to_json(const struct QcohTable *table, char **out);

// Number of independent associativity equations for `m + 1` classes, as a
// decimal string.
//
// # Safety
// `out` must be writable.
enum QcohStatus qcoh_wdvv_count(uint64_t m, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCOH_H */
