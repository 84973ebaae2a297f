#ifndef PERSTOPY_H
#define PERSTOPY_H

/* Generated by cbindgen from perstopy-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Classification tag of a fundamental group at one scale.
typedef enum {
  PstGroupTag_Trivial = 0,
  PstGroupTag_Free = 1,
  PstGroupTag_FreeAbelian = 2,
  PstGroupTag_Unclassified = 3,
} PstGroupTag;

// Status code returned by every fallible call.
typedef enum {
  PstStatus_Ok = 0,
  PstStatus_NullPointer = 1,
  PstStatus_InvalidUtf8 = 2,
  PstStatus_InvalidJson = 3,
  PstStatus_NotAMetric = 4,
  PstStatus_InvalidArgument = 5,
  PstStatus_BudgetExceeded = 6,
  PstStatus_BufferTooSmall = 7,
} PstStatus;

// Opaque handle to a finite metric space with an optional basepoint.
typedef struct PstSpace PstSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *pst_last_error(void);

// Parses a space from its JSON form
// `{"labels": [...], "dist": [[...]], "basepoint": optional}`.
// Returns null on failure (see `pst_last_error`).
//
// # Safety
// `json` must be a valid NUL-terminated C string.
PstSpace *pst_space_from_json(const char *json);

// Builds one of the canonical spaces: kind is `"cycle"`, `"star"`,
// `"circle"`, `"uniform"`, or `"tree"`. Returns null on failure.
//
// # Safety
// `kind` must be a valid NUL-terminated C string.
PstSpace *pst_space_generate(const char *kind, uint32_t n, uint64_t seed);

// Frees a space handle; a null pointer is a no-op.
//
// # Safety
// `s` must have been returned by a `pst_space_*` constructor and not yet
// freed.
void pst_space_free(PstSpace *s);

// Serializes a space back to JSON; free the string with `pst_string_free`.
//
// # Safety
// `s` must be a live space handle.
char *pst_space_to_json(const PstSpace *s);

// Frees a string returned by this library; a null pointer is a no-op.
//
// # Safety
// `s` must have been returned by a `pst_*` function producing a string.
void pst_string_free(char *s);

// Number of points, or -1 for a null handle.
//
// # Safety
// `s` must be null or a live space handle.
int64_t pst_space_size(const PstSpace *s);

// Basepoint index, or -1 when none is set.
//
// # Safety
// `s` must be null or a live space handle.
int64_t pst_space_basepoint(const PstSpace *s);

// Pairwise distance.
//
// # Safety
// `s` must be a live space handle and `out` a writable f64 slot.
PstStatus pst_space_distance(const PstSpace *s, uint32_t i, uint32_t j, double *out);

// Diameter of the space.
//
// # Safety
// `s` must be a live space handle and `out` a writable f64 slot.
PstStatus pst_space_diameter(const PstSpace *s, double *out);

// Exact Gromov-Hausdorff distance; fails with `BudgetExceeded` when the
// map-pair search space exceeds `budget`.
//
// # Safety
// `x` and `y` must be live space handles and `out` a writable f64 slot.
PstStatus pst_gh_exact(const PstSpace *x, const PstSpace *y, uint64_t budget, double *out);

// Pointed Gromov-Hausdorff distance using the stored basepoints
// (defaulting to point 0).
//
// # Safety
// `x` and `y` must be live space handles and `out` a writable f64 slot.
PstStatus pst_gh_pointed_exact(const PstSpace *x, const PstSpace *y, uint64_t budget, double *out);

// Best certified lower bound for the GH distance (no exact search).
//
// # Safety
// `x` and `y` must be live space handles and `out` a writable f64 slot.
PstStatus pst_gh_lower_bound(const PstSpace *x, const PstSpace *y, uint64_t budget, double *out);

// Classification of the fundamental group at one scale: writes the tag and
// the rank (free rank, free-abelian rank, or abelianization rank).
//
// # Safety
// `s` must be a live space handle; `out_tag` and `out_rank` writable slots.
PstStatus pst_pi1_class_at(const PstSpace *s,
                           double scale,
                           PstGroupTag *out_tag,
                           uint64_t *out_rank);

// Persistence barcode in dimension 0 or 1 as flat (birth, death) pairs;
// infinite deaths are `INFINITY`. Call with a null buffer to query the
// length in pairs.
//
// # Safety
// `s` must be a live space handle; `out_pairs` null or `2 * capacity` f64
// slots; `out_len` a writable slot.
PstStatus pst_barcode(const PstSpace *s,
                      uint32_t dim,
                      double *out_pairs,
                      size_t capacity,
                      size_t *out_len);

// Single-linkage ultrametric, row-major n*n. Two-call pattern as for
// `pst_barcode` (`out_len` in f64 entries).
//
// # Safety
// `s` must be a live space handle; `out` null or `capacity` f64 slots;
// `out_len` a writable slot.
PstStatus pst_mu0(const PstSpace *s, double *out, size_t capacity, size_t *out_len);

// Bottleneck distance between two diagrams given as flat (birth, death)
// pairs; use `INFINITY` for essential classes.
//
// # Safety
// `a` must point to `2 * a_pairs` f64 values (likewise `b`); `out` must be
// a writable f64 slot. Null data pointers are accepted only for length 0.
PstStatus pst_bottleneck(const double *a,
                         size_t a_pairs,
                         const double *b,
                         size_t b_pairs,
                         double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PERSTOPY_H */
