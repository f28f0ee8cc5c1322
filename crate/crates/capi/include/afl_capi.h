#ifndef AFL_CAPI_H
#define AFL_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every fallible entry point.
 */
typedef enum AflStatus {
  Ok = 0,
  /**
   * Bad argument (domain error, parse error, null pointer).
   */
  InvalidArgument = 2,
  /**
   * Precision exhausted or enumeration box unstable; retry with more.
   */
  Unstable = 3,
  /**
   * Numerical evaluation failed (quadrature or series did not converge).
   */
  NumericError = 4,
  /**
   * Output buffer too small for the requested string.
   */
  BufferTooSmall = 5,
  /**
   * Unexpected internal failure.
   */
  Internal = 6,
} AflStatus;

/**
 * Opaque Laurent polynomial in `X = q^{-s}`.
 */
typedef struct AflPoly AflPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an empty polynomial. Free with [`afl_poly_free`].
 */
struct AflPoly *afl_poly_new(void);

/**
 * # Safety
 * `poly` must be a pointer returned by this library and not yet freed.
 */
void afl_poly_free(struct AflPoly *poly);

/**
 * Add `coeff * X^exp`; `coeff` is a rational string like `"-3/2"`.
 *
 * # Safety
 * `poly` must be a live handle; `coeff` a NUL-terminated string.
 */
enum AflStatus afl_poly_add_term(struct AflPoly *poly, int64_t exp, const char *coeff);

/**
 * Number of stored (nonzero) terms.
 *
 * # Safety
 * `poly` must be a live handle.
 */
uintptr_t afl_poly_num_terms(const struct AflPoly *poly);

/**
 * Coefficient of `X^exp` as a rational string.
 *
 * # Safety
 * `poly` must be a live handle; `buf` must point to `len` writable bytes.
 */
enum AflStatus afl_poly_coeff(const struct AflPoly *poly, int64_t exp, char *buf, uintptr_t len);

/**
 * Value and derivative at `s = 0` for residue cardinality `q`. The value
 * is a rational string; the derivative a JSON log-linear document
 * `{"real": 0.0, "logs": {"3": "-2"}}`.
 *
 * # Safety
 * `poly` must be a live handle; both buffers must have the stated sizes.
 */
enum AflStatus afl_poly_special_values(const struct AflPoly *poly,
                                       uint64_t q,
                                       char *value_buf,
                                       uintptr_t value_len,
                                       char *deriv_buf,
                                       uintptr_t deriv_len);

/**
 * Rank-one closed form with `M = v(c^{-1} zeta)` into `out`.
 *
 * # Safety
 * `out` must be a live handle.
 */
enum AflStatus afl_orb_rank1_split(int64_t m, struct AflPoly *out);

/**
 * Brute coset-sum oracle over the given valuation split into `out`.
 *
 * # Safety
 * `out` must be a live handle.
 */
enum AflStatus afl_orb_rank1_split_brute(int64_t v_u1,
                                         int64_t v_u2,
                                         int64_t v_c,
                                         struct AflPoly *out);

/**
 * Hermitian-side rank-one value: 1 iff `v >= 0` and even.
 */
int32_t afl_orb_rank1_hermitian(int64_t v_delta_zeta);

/**
 * Degree-factor vs derivative cross-check at odd `v` and prime power `q`.
 *
 * # Safety
 * `ok` must be a valid pointer.
 */
enum AflStatus afl_cm_factor_crosscheck(int64_t v, uint64_t q, bool *ok);

/**
 * Lattice-sum orbital integral of an orbit datum given as JSON (the same
 * schema as the CLI); the result record is written as JSON.
 *
 * # Safety
 * `orbit_json` must be NUL-terminated; `buf` must point to `len` bytes.
 */
enum AflStatus afl_orb_lattice_sum_json(const char *orbit_json,
                                        uint64_t q,
                                        int64_t precision,
                                        char *buf,
                                        uintptr_t len);

/**
 * Diff set of an incoherent family given as JSON; the sorted place ids are
 * written as a JSON array.
 *
 * # Safety
 * `family_json` must be NUL-terminated; `buf` must point to `len` bytes.
 */
enum AflStatus afl_diff_set_json(const char *family_json, char *buf, uintptr_t len);

/**
 * Rank-one hermitian lattice dual exponents. `*has_selfdual` reports
 * whether a self-dual lattice exists (even scale valuation).
 *
 * # Safety
 * All output pointers must be valid.
 */
enum AflStatus afl_rank1_dual(int64_t k,
                              int64_t v_beta,
                              int64_t *dual_k,
                              int64_t *selfdual_k,
                              bool *has_selfdual);

/**
 * Archimedean orbital integral closed form. `*has_deriv` is set when the
 * derivative is available in closed form (`zeta < 0`).
 *
 * # Safety
 * All output pointers must be valid.
 */
enum AflStatus afl_orb_arch(double zeta,
                            double a,
                            double b,
                            double theta,
                            double *value_re,
                            double *value_im,
                            double *deriv_re,
                            double *deriv_im,
                            bool *has_deriv);

/**
 * Quadrature oracle for the archimedean orbital integral at real `s`.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum AflStatus afl_orb_arch_quadrature(double zeta,
                                       double a,
                                       double b,
                                       double theta,
                                       double s,
                                       double *out_re,
                                       double *out_im);

/**
 * Exponential integral `Ei(x)` for `x < 0`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AflStatus afl_exp_integral(double x, double *out);

/**
 * Weight-`k` Whittaker function.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum AflStatus afl_whittaker(double xi,
                             int64_t k,
                             double a,
                             double b,
                             double theta,
                             double *out_re,
                             double *out_im);

/**
 * Secondary spherical function at `x = qu/qu_perp`, complex `s`.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum AflStatus afl_secondary_spherical(double qu,
                                       double qu_perp,
                                       double s_re,
                                       double s_im,
                                       int64_t m,
                                       double *out_re,
                                       double *out_im);

/**
 * Kudla Green kernel at majorant value `r`; `four_pi` selects the
 * alternate exponent normalization.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AflStatus afl_kudla_green_r(double r, double a, bool four_pi, double *out);

/**
 * Gaussian weight pair for an orthogonal splitting.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum AflStatus afl_gaussian_weights(double q_plus,
                                    double q_minus,
                                    uint32_t dim,
                                    double *phi0,
                                    double *phi0_plus);

/**
 * Invariance of the indicator `1_{pi^{s1} O x pi^{s2} O}` under the
 * compact generators at character level `d`, over the unramified field of
 * residue cardinality `p^f`.
 *
 * # Safety
 * `invariant` must be a valid pointer.
 */
enum AflStatus afl_weil_check_invariance(uint64_t p,
                                         uint32_t f,
                                         int64_t d,
                                         int64_t s1,
                                         int64_t s2,
                                         bool *invariant);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFL_CAPI_H */
