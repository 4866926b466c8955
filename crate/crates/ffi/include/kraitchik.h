#ifndef KRAITCHIK_H
#define KRAITCHIK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define KRAITCHIK_OK 0

#define KRAITCHIK_ERR_NULL -1

#define KRAITCHIK_ERR_MODULUS -2

#define KRAITCHIK_ERR_INDEX -3

#define KRAITCHIK_ERR_RATIO_GATE -4

#define KRAITCHIK_ERR_OVERFLOW -5

#define KRAITCHIK_ERR_BUFFER -6

#define KRAITCHIK_ERR_ARGUMENT -7

#define KRAITCHIK_ERR_INTERNAL -8

#define KRAITCHIK_VERIFIED 0

#define KRAITCHIK_FALSIFIED 1

#define KRAITCHIK_UNRESOLVED 2

// Opaque handle to a computed `(Psi_d, Xi_d)` pair.
typedef struct KraitchikPairHandle KraitchikPairHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the pair for odd squarefree `d >= 3`. Free with `kraitchik_pair_free`.
//
// # Safety
// `out` must be null or valid for writing one pointer.
int32_t kraitchik_pair_new(uint64_t d, struct KraitchikPairHandle **out);

// # Safety
// `pair` must be null or a handle from `kraitchik_pair_new` not yet freed.
void kraitchik_pair_free(struct KraitchikPairHandle *pair);

// `d' = phi(d)/2`, the degree of `Psi_d`.
//
// # Safety
// `pair` must be a live handle; `out` valid for writing.
int32_t kraitchik_pair_degree(const struct KraitchikPairHandle *pair, uint64_t *out);

// `D = (-1)^((d-1)/2) d`.
//
// # Safety
// `pair` must be a live handle; `out` valid for writing.
int32_t kraitchik_pair_discriminant(const struct KraitchikPairHandle *pair, int64_t *out);

// Copies `a_{d,0..d'}` into `a` (length `d'+1`) and `b_{d,1..d'}` into `b`
// (length `d'`), highest power first.
//
// # Safety
// `a` and `b` must be valid for `a_len` and `b_len` writes.
int32_t kraitchik_pair_coefficients(const struct KraitchikPairHandle *pair,
                                    int64_t *a,
                                    size_t a_len,
                                    int64_t *b,
                                    size_t b_len);

// Exact check of `4 Phi_d = Psi_d^2 - D Xi_d^2`.
//
// # Safety
// `pair` must be a live handle; `verdict` valid for writing.
int32_t kraitchik_verify_identity(const struct KraitchikPairHandle *pair, int32_t *verdict);

// Both rising-factorial coefficient bounds at index `n`, `0 <= n <= d'`.
//
// # Safety
// `pair` must be a live handle; `verdict` valid for writing.
int32_t kraitchik_check_bounds(const struct KraitchikPairHandle *pair,
                               uint64_t n,
                               uint32_t precision_max,
                               int32_t *verdict);

// The three-way coefficient bound at index `n`, `1 <= n <= d'`.
//
// # Safety
// `pair` must be a live handle; `verdict` valid for writing.
int32_t kraitchik_check_corollary(const struct KraitchikPairHandle *pair,
                                  uint64_t n,
                                  uint32_t precision_max,
                                  int32_t *verdict);

// The ratio estimate at `x = x_num / x_den`; requires `x > 2 G_d`.
// `lhs` (nullable) receives a double approximation of the exact left side.
//
// # Safety
// `pair` must be a live handle; `verdict` valid for writing; `lhs` null or valid.
int32_t kraitchik_check_ratio(const struct KraitchikPairHandle *pair,
                              int64_t x_num,
                              int64_t x_den,
                              uint32_t precision_max,
                              int32_t *verdict,
                              double *lhs);

// Copies the last error message on this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length excluding the NUL.
//
// # Safety
// `buf` must be null or valid for `len` writes.
size_t kraitchik_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KRAITCHIK_H */
