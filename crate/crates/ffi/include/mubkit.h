#ifndef MUBKIT_H
#define MUBKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Tables for d <= 5, the odd-prime construction otherwise.
 */
#define MUBKIT_SOURCE_AUTO 0

#define MUBKIT_SOURCE_PAPER 1

#define MUBKIT_SOURCE_GENERATED 2

/*
 Result of an FFI call.
 */
typedef enum MubkitStatus {
  MUBKIT_STATUS_OK = 0,
  /*
   A check ran and did not pass.
   */
  MUBKIT_STATUS_VERIFICATION_FAILED = 1,
  /*
   No construction exists for the requested dimension (e.g. d = 6).
   */
  MUBKIT_STATUS_UNSUPPORTED_DIMENSION = 2,
  MUBKIT_STATUS_INVALID_ARGUMENT = 3,
  MUBKIT_STATUS_DIMENSION_MISMATCH = 4,
  MUBKIT_STATUS_INVALID_DATA = 5,
  MUBKIT_STATUS_NULL_POINTER = 6,
  MUBKIT_STATUS_BUFFER_TOO_SMALL = 7,
  MUBKIT_STATUS_PANIC = 8,
} MubkitStatus;

/*
 Opaque complete MUB family.
 */
typedef struct MubkitFamily MubkitFamily;

/*
 Opaque operator set built from a family.
 */
typedef struct MubkitOperatorSet MubkitOperatorSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *mubkit_version(void);

/*
 Message for the last failed call on this thread, or `NULL`. Valid until
 the next call into the library on the same thread.
 */
const char *mubkit_last_error_message(void);

/*
 Builds a complete MUB family of dimension `dim`.

 # Safety
 `out` must be a valid pointer to writable storage for a handle.
 */
enum MubkitStatus mubkit_family_new(size_t dim, uint32_t source, struct MubkitFamily **out);

/*
 # Safety
 `f` must be `NULL` or a handle from [`mubkit_family_new`] not yet freed.
 */
void mubkit_family_free(struct MubkitFamily *f);

/*
 Dimension `d`, or 0 for `NULL`.

 # Safety
 `f` must be `NULL` or a live handle.
 */
size_t mubkit_family_dim(const struct MubkitFamily *f);

/*
 Number of bases (`d + 1`), or 0 for `NULL`.

 # Safety
 `f` must be `NULL` or a live handle.
 */
size_t mubkit_family_len(const struct MubkitFamily *f);

/*
 Copies basis `index` (columns are the basis vectors) into `buf`.

 # Safety
 `f` must be a live handle; `buf` must hold `len` writable doubles.
 */
enum MubkitStatus mubkit_family_basis(const struct MubkitFamily *f,
                                      size_t index,
                                      double *buf,
                                      size_t len);

/*
 Certifies the family; `tol = 0` selects the default. Writes the worst
 unbiasedness deviation to `worst` when it is non-null.

 # Safety
 `f` must be a live handle; `worst` must be `NULL` or writable.
 */
enum MubkitStatus mubkit_family_check(const struct MubkitFamily *f, double tol, double *worst);

/*
 Builds the `d² − 1` operators from a family.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum MubkitStatus mubkit_operator_set_new(const struct MubkitFamily *f,
                                          struct MubkitOperatorSet **out);

/*
 # Safety
 `s` must be `NULL` or a handle from [`mubkit_operator_set_new`] not yet freed.
 */
void mubkit_operator_set_free(struct MubkitOperatorSet *s);

/*
 Number of operators, or 0 for `NULL`.

 # Safety
 `s` must be `NULL` or a live handle.
 */
size_t mubkit_operator_set_len(const struct MubkitOperatorSet *s);

/*
 Dimension, or 0 for `NULL`.

 # Safety
 `s` must be `NULL` or a live handle.
 */
size_t mubkit_operator_set_dim(const struct MubkitOperatorSet *s);

/*
 Copies operator `index` (class-major order) into `buf`.

 # Safety
 `s` must be a live handle; `buf` must hold `len` writable doubles.
 */
enum MubkitStatus mubkit_operator_set_operator(const struct MubkitOperatorSet *s,
                                               size_t index,
                                               double *buf,
                                               size_t len);

/*
 Runs every structural check; `tol = 0` selects the default. Writes the
 number of failed checks to `failed` when it is non-null.

 # Safety
 `s` must be a live handle; `failed` must be `NULL` or writable.
 */
enum MubkitStatus mubkit_operator_set_verify(const struct MubkitOperatorSet *s,
                                             double tol,
                                             size_t *failed);

/*
 Linear-inversion reconstruction from outcome probabilities.

 `probs` holds `(d + 1)·d` values, basis-major in family order. The
 estimate is written to `rho` as `2·d²` interleaved doubles. When
 `project` is non-zero the estimate is clipped to a valid state.

 # Safety
 `f`, `s` must be live handles of equal dimension; `probs` must hold
 `probs_len` readable doubles and `rho` `rho_len` writable doubles.
 */
enum MubkitStatus mubkit_reconstruct(const struct MubkitFamily *f,
                                     const struct MubkitOperatorSet *s,
                                     const double *probs,
                                     size_t probs_len,
                                     int32_t project,
                                     double *rho,
                                     size_t rho_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MUBKIT_H */
