#ifndef HECKE_BAXTER_H
#define HECKE_BAXTER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HbStatus {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_ARGUMENT = 2,
  HB_STATUS_SINGULAR_MATRIX = 3,
  HB_STATUS_POLE = 4,
  HB_STATUS_NO_CONVERGENCE = 5,
  HB_STATUS_NUMERICAL_FAILURE = 6,
  HB_STATUS_PANIC = 7,
} HbStatus;

// Opaque spectral parameters `(s, c, γ, ε)`.
typedef struct HbParams HbParams;

typedef struct HbComplex {
  double re;
  double im;
} HbComplex;

// A Monte-Carlo estimate.
typedef struct HbEstimate {
  struct HbComplex mean;
  // Standard error of `mean`; not `stderr`, which C reserves as a macro.
  double std_error;
  uint64_t samples;
  // Draws given weight zero as numerically singular.
  uint64_t rejected;
} HbEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *hb_version(void);

// Copies the calling thread's last error message into `buf` (truncated,
// always NUL-terminated when `len > 0`). Returns the full message length
// excluding the terminator; empty after a successful call.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t hb_last_error_message(char *buf, size_t len);

// Creates parameters for matrices of size `n`. `gamma` holds `n` reals and
// `epsilon` `n` bits. Release with [`hb_params_free`].
//
// # Safety
// `gamma` and `epsilon` must point to `n` elements; `out` must be writable.
enum HbStatus hb_params_new(size_t n,
                            double s_re,
                            double s_im,
                            double c,
                            const double *gamma,
                            const uint8_t *epsilon,
                            struct HbParams **out);

// Releases parameters from [`hb_params_new`]; null is ignored.
//
// # Safety
// `params` must be null or come from [`hb_params_new`], and not be used
// afterwards.
void hb_params_free(struct HbParams *params);

// Matrix size of the parameters, or 0 for null.
//
// # Safety
// `params` must be null or a live handle.
size_t hb_params_dim(const struct HbParams *params);

// L(s, c | ε, γ).
//
// # Safety
// `params` must be a live handle and `out` writable.
enum HbStatus hb_l_factor(const struct HbParams *params, struct HbComplex *out);

// Δ_W(g).
//
// # Safety
// `g` must point to `n·n` doubles and `out` be writable.
enum HbStatus hb_delta_w(size_t n, const double *g, double *out);

// The minor with rows `eps_row` and columns `eps_col` of `g`; zero when
// the two weights differ.
//
// # Safety
// `eps_row` and `eps_col` must point to `n` bytes, `g` to `n·n` doubles,
// and `out` be writable.
enum HbStatus hb_minor(size_t n,
                       const uint8_t *eps_row,
                       const uint8_t *eps_col,
                       const double *g,
                       double *out);

// g = k·diag(a)·n_factor with `n_factor` lower unipotent.
//
// # Safety
// `g`, `k_out` and `n_out` must hold `n·n` doubles and `a_out` `n`.
enum HbStatus hb_iwasawa(size_t n, const double *g, double *k_out, double *a_out, double *n_out);

// g = k1·diag(a)·k2 with `a` non-increasing.
//
// # Safety
// `g`, `k1_out` and `k2_out` must hold `n·n` doubles and `a_out` `n`.
enum HbStatus hb_cartan(size_t n, const double *g, double *k1_out, double *a_out, double *k2_out);

// φ_ε(g) for the parameters' signature.
//
// # Safety
// `params` must be a live handle, `g` hold `n·n` doubles for its size `n`,
// and `out` be writable.
enum HbStatus hb_epsilon_spherical(const struct HbParams *params,
                                   const double *g,
                                   struct HbComplex *out);

// Monte-Carlo estimate of (Q̂_s ∗ φ_ε)(g) with `samples` draws from stream
// `(seed, stream_id)`.
//
// # Safety
// `params` must be a live handle, `g` hold `n·n` doubles for its size `n`,
// and `out` be writable.
enum HbStatus hb_convolve_vector(const struct HbParams *params,
                                 const double *g,
                                 uint64_t samples,
                                 uint64_t seed,
                                 uint32_t stream_id,
                                 struct HbEstimate *out);

// Monte-Carlo estimate of the eigenvalue (Q̂_s ∗ φ_ε)(g) / φ_ε(g), which
// should equal L(s, c | ε, γ).
//
// # Safety
// As for [`hb_convolve_vector`].
enum HbStatus hb_eigenvalue_estimate(const struct HbParams *params,
                                     const double *g,
                                     uint64_t samples,
                                     uint64_t seed,
                                     struct HbEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKE_BAXTER_H */
