#ifndef MIXED_FRAME_H
#define MIXED_FRAME_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum MfStatus {
  MF_STATUS_OK = 0,
  /**
   * Null pointer, bad UTF-8 or an out-of-range argument.
   */
  MF_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed document or violated precondition.
   */
  MF_STATUS_INVALID_INPUT = 2,
  /**
   * Eigensolver or internal consistency failure.
   */
  MF_STATUS_NUMERICAL = 3,
  /**
   * A Rust panic was caught at the boundary.
   */
  MF_STATUS_PANIC = 4,
} MfStatus;

/**
 * Ground field selector.
 */
typedef enum MfField {
  MF_FIELD_REAL = 0,
  MF_FIELD_COMPLEX = 1,
} MfField;

/**
 * Opaque frame pair, optionally carrying its constraint values.
 */
typedef struct MfFramePair MfFramePair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *mf_last_error(void);

/**
 * Parses a frame-pair JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MfStatus mf_pair_from_json(const char *json, struct MfFramePair **out);

/**
 * Random pair with standard normal entries from `seed`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MfStatus mf_pair_random(enum MfField field,
                             size_t d,
                             size_t n,
                             uint64_t seed,
                             struct MfFramePair **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `pair` must come from this library and not be used afterwards.
 */
void mf_pair_free(struct MfFramePair *pair);

/**
 * Dimension `d` and length `N`.
 *
 * # Safety
 * `pair` must be a live handle, `d` and `n` valid pointers.
 */
enum MfStatus mf_pair_shape(const struct MfFramePair *pair, size_t *d, size_t *n);

/**
 * Serialises the pair (and its stored alpha) as a JSON document.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer.
 */
enum MfStatus mf_pair_to_json(const struct MfFramePair *pair, char **out);

/**
 * `FP(F, G)` from the cross Gram matrix.
 *
 * # Safety
 * `pair` must be a live handle, `re` and `im` valid pointers.
 */
enum MfStatus mf_fp_direct(const struct MfFramePair *pair, double *re, double *im);

/**
 * `Tr((TU*)²)`, cross-checked against the eigenvalues at `tol`.
 *
 * # Safety
 * `pair` must be a live handle, `re` and `im` valid pointers.
 */
enum MfStatus mf_fp_trace(const struct MfFramePair *pair, double tol, double *re, double *im);

/**
 * Spectral bound report as JSON. Pass null `alpha_re` and `alpha_im` to use
 * the alpha stored with the pair.
 *
 * # Safety
 * `pair` must be a live handle; non-null alpha arrays must hold `len`
 * values; `out` must be a valid pointer.
 */
enum MfStatus mf_bound_report(const struct MfFramePair *pair,
                              const double *alpha_re,
                              const double *alpha_im,
                              size_t len,
                              double class_tol,
                              char **out);

/**
 * Critical-pair report as JSON.
 *
 * # Safety
 * As for [`mf_bound_report`].
 */
enum MfStatus mf_critical_report(const struct MfFramePair *pair,
                                 const double *alpha_re,
                                 const double *alpha_im,
                                 size_t len,
                                 double tol,
                                 char **out);

/**
 * Decomposition report as JSON; a pair that is not critical yields
 * `InvalidInput`.
 *
 * # Safety
 * As for [`mf_bound_report`].
 */
enum MfStatus mf_decompose(const struct MfFramePair *pair,
                           const double *alpha_re,
                           const double *alpha_im,
                           size_t len,
                           double tol,
                           double cluster_tol,
                           char **out);

/**
 * Dual-pair conditions report as JSON.
 *
 * # Safety
 * As for [`mf_bound_report`].
 */
enum MfStatus mf_corollary(const struct MfFramePair *pair,
                           const double *alpha_re,
                           const double *alpha_im,
                           size_t len,
                           double tol,
                           char **out);

/**
 * Searches for a critical pair with `<f_m, g_m> = α_m`. `config_json` is an
 * optimizer configuration object (null for defaults). The search result is
 * written to `out_json`; when `out_pair` is non-null it receives a new
 * handle holding the final pair and alpha.
 *
 * # Safety
 * `alpha_re` must hold `len` values, `alpha_im` must be null or hold `len`
 * values, `config_json` must be null or NUL-terminated, `out_json` must be
 * valid.
 */
enum MfStatus mf_search(const double *alpha_re,
                        const double *alpha_im,
                        size_t len,
                        enum MfField field,
                        size_t d,
                        const char *config_json,
                        char **out_json,
                        struct MfFramePair **out_pair);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXED_FRAME_H */
