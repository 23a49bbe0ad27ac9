#ifndef SHELFLAB_H
#define SHELFLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShelflabFreeKind {
  SHELFLAB_FREE_KIND_FAS = 0,
  SHELFLAB_FREE_KIND_FPUS = 1,
  SHELFLAB_FREE_KIND_FPTUS = 2,
  SHELFLAB_FREE_KIND_FUS = 3,
} ShelflabFreeKind;

typedef enum ShelflabStatus {
  SHELFLAB_STATUS_OK = 0,
  SHELFLAB_STATUS_NULL_POINTER = 1,
  // Malformed table text, out-of-range entry or bad argument.
  SHELFLAB_STATUS_INVALID_ARGUMENT = 2,
  // A size or degree bound was exceeded.
  SHELFLAB_STATUS_BOUND_EXCEEDED = 3,
  // The operation needs a shelf (or an associative shelf) and did not get one.
  SHELFLAB_STATUS_NOT_SHELF = 4,
  SHELFLAB_STATUS_COMPUTATION_FAILED = 5,
  SHELFLAB_STATUS_PANIC = 6,
} ShelflabStatus;

typedef enum ShelflabTheory {
  SHELFLAB_THEORY_ONE_TERM = 0,
  SHELFLAB_THEORY_TWO_TERM = 1,
} ShelflabTheory;

typedef struct ShelflabFreeTable ShelflabFreeTable;

typedef struct ShelflabLaver ShelflabLaver;

typedef struct ShelflabMagma ShelflabMagma;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the next call
// into this library on the same thread.
const char *shelflab_last_error(void);

const char *shelflab_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void shelflab_string_free(char *s);

// Parses a table in `.cay` text form: the order, then one row per line.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum ShelflabStatus shelflab_magma_from_cay(const char *text, struct ShelflabMagma **out);

// Builds a magma from `order * order` row-major entries, 0-indexed.
//
// # Safety
// `entries` must point to `order * order` readable values; `out` must be writable.
enum ShelflabStatus shelflab_magma_from_table(size_t order,
                                              const uint32_t *entries,
                                              struct ShelflabMagma **out);

// # Safety
// `m` must be null or a handle from this library, not yet freed.
void shelflab_magma_free(struct ShelflabMagma *m);

// Order of `m`, or 0 if `m` is null.
//
// # Safety
// `m` must be null or a live handle.
size_t shelflab_magma_order(const struct ShelflabMagma *m);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_magma_op(const struct ShelflabMagma *m,
                                      size_t x,
                                      size_t y,
                                      size_t *out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_magma_is_shelf(const struct ShelflabMagma *m, bool *out);

// Axiom report as a JSON object.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_magma_axioms_json(const struct ShelflabMagma *m, char **out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_magma_to_cay(const struct ShelflabMagma *m, char **out);

// Integral homology group `H_q`. Writes its free rank and its torsion coefficients as a
// JSON array such as `[2,6]`.
//
// # Safety
// `m` must be a live handle; both out pointers must be writable.
enum ShelflabStatus shelflab_homology(const struct ShelflabMagma *m,
                                      enum ShelflabTheory theory,
                                      size_t q,
                                      bool reduced,
                                      size_t *out_free_rank,
                                      char **out_torsion_json);

// Free structure on `n` generators. `max_len` bounds the word length for
// [`ShelflabFreeKind::Fas`] and is ignored otherwise.
//
// # Safety
// `out` must be writable.
enum ShelflabStatus shelflab_free_table_build(enum ShelflabFreeKind kind,
                                              size_t n,
                                              size_t max_len,
                                              struct ShelflabFreeTable **out);

// # Safety
// `t` must be null or a handle from this library, not yet freed.
void shelflab_free_table_free(struct ShelflabFreeTable *t);

// Number of elements, or 0 if `t` is null.
//
// # Safety
// `t` must be null or a live handle.
size_t shelflab_free_table_len(const struct ShelflabFreeTable *t);

// Element `i` as a dotted word such as `0.1.0`; the empty word is `""`.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_free_table_element(const struct ShelflabFreeTable *t,
                                                size_t i,
                                                char **out);

// Copy of the multiplication table as a new magma handle.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_free_table_magma(const struct ShelflabFreeTable *t,
                                              struct ShelflabMagma **out);

// Laver table `A_k` on `2^k` elements.
//
// # Safety
// `out` must be writable.
enum ShelflabStatus shelflab_laver_build(size_t k, struct ShelflabLaver **out);

// # Safety
// `t` must be null or a handle from this library, not yet freed.
void shelflab_laver_free(struct ShelflabLaver *t);

// `2^k`, or 0 if `t` is null.
//
// # Safety
// `t` must be null or a live handle.
size_t shelflab_laver_size(const struct ShelflabLaver *t);

// `a * b` with 1-indexed arguments and result.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_laver_get(const struct ShelflabLaver *t,
                                       size_t a,
                                       size_t b,
                                       size_t *out);

// The table as a 0-indexed magma handle. The operation is left self-distributive, so
// [`shelflab_magma_is_shelf`] reports false for `k >= 2`; transpose it for a shelf.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum ShelflabStatus shelflab_laver_magma(const struct ShelflabLaver *t, struct ShelflabMagma **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHELFLAB_H */
