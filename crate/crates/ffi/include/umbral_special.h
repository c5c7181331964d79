#ifndef UMBRAL_SPECIAL_H
#define UMBRAL_SPECIAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum UmbralStatus {
  UMBRAL_STATUS_OK = 0,
  UMBRAL_STATUS_NULL_POINTER = 1,
  UMBRAL_STATUS_DOMAIN = 2,
  UMBRAL_STATUS_POLE = 3,
  UMBRAL_STATUS_OVERFLOW = 4,
  UMBRAL_STATUS_NON_CONVERGENCE = 5,
  UMBRAL_STATUS_LIMIT_EXCEEDED = 6,
  UMBRAL_STATUS_QUADRATURE = 7,
  UMBRAL_STATUS_UNKNOWN_IDENTITY = 8,
  UMBRAL_STATUS_INVALID_ARGUMENT = 9,
  UMBRAL_STATUS_PANIC = 10,
} UmbralStatus;

typedef enum UmbralPath {
  UMBRAL_PATH_SERIES = 0,
  UMBRAL_PATH_EXTENDED_SERIES = 1,
  UMBRAL_PATH_ASYMPTOTIC = 2,
  UMBRAL_PATH_CLOSED_FORM = 3,
} UmbralPath;

typedef enum UmbralReportStatus {
  UMBRAL_REPORT_STATUS_PASS = 0,
  UMBRAL_REPORT_STATUS_FAIL = 1,
  UMBRAL_REPORT_STATUS_SKIPPED = 2,
} UmbralReportStatus;

/**
 * Opaque evaluation policy.
 */
typedef struct UmbralPolicy UmbralPolicy;

/**
 * Opaque list of verification reports.
 */
typedef struct UmbralReportList UmbralReportList;

typedef struct UmbralSeriesResult {
  double value;
  uint64_t terms_used;
  double tail_estimate;
  enum UmbralPath path;
} UmbralSeriesResult;

/**
 * One verification record. Non-finite or missing numbers are NaN.
 */
typedef struct UmbralReport {
  /**
   * NUL-terminated identity id, e.g. "I01".
   */
  char id[8];
  double lhs;
  double rhs;
  double abs_err;
  double rel_err;
  double tol_abs;
  double tol_rel;
  double seconds;
  enum UmbralReportStatus status;
} UmbralReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length in bytes.
 */
size_t umbral_last_error(char *buf, size_t len);

/**
 * New policy with default tolerances; free with [`umbral_policy_free`].
 */
struct UmbralPolicy *umbral_policy_new(void);

void umbral_policy_free(struct UmbralPolicy *policy);

enum UmbralStatus umbral_policy_set_tolerances(struct UmbralPolicy *policy,
                                               double rel_tol,
                                               double abs_tol);

enum UmbralStatus umbral_policy_set_max_terms(struct UmbralPolicy *policy, uint64_t max_terms);

/**
 * Forces one evaluation path; `enabled = false` restores automatic choice.
 */
enum UmbralStatus umbral_policy_force_path(struct UmbralPolicy *policy,
                                           enum UmbralPath path,
                                           bool enabled);

/**
 * Spherical Bessel j_n(x).
 */
enum UmbralStatus umbral_sph_j(const struct UmbralPolicy *policy,
                               int32_t n,
                               double x,
                               struct UmbralSeriesResult *out);

/**
 * Bessel J_ν(x), x ≥ 0.
 */
enum UmbralStatus umbral_cyl_j(const struct UmbralPolicy *policy,
                               double nu,
                               double x,
                               struct UmbralSeriesResult *out);

/**
 * Struve H_α(x).
 */
enum UmbralStatus umbral_struve_h(const struct UmbralPolicy *policy,
                                  double alpha,
                                  double x,
                                  struct UmbralSeriesResult *out);

/**
 * Humbert J_{μ,ν}(z).
 */
enum UmbralStatus umbral_humbert2(const struct UmbralPolicy *policy,
                                  double mu,
                                  double nu,
                                  double z,
                                  struct UmbralSeriesResult *out);

/**
 * Humbert J_{μ,ν,ρ}(z).
 */
enum UmbralStatus umbral_humbert3(const struct UmbralPolicy *policy,
                                  double mu,
                                  double nu,
                                  double rho,
                                  double z,
                                  struct UmbralSeriesResult *out);

/**
 * ₁F₂(a; b1, b2; z).
 */
enum UmbralStatus umbral_hyp1f2(const struct UmbralPolicy *policy,
                                double a,
                                double b1,
                                double b2,
                                double z,
                                struct UmbralSeriesResult *out);

/**
 * Δ_{α,β,γ}(x).
 */
enum UmbralStatus umbral_delta(const struct UmbralPolicy *policy,
                               double alpha,
                               double beta,
                               double gamma_,
                               double x,
                               struct UmbralSeriesResult *out);

/**
 * S₁(ν, x).
 */
enum UmbralStatus umbral_s1(const struct UmbralPolicy *policy,
                            double nu,
                            double x,
                            struct UmbralSeriesResult *out);

/**
 * S₂(ν, x).
 */
enum UmbralStatus umbral_s2(const struct UmbralPolicy *policy,
                            double nu,
                            double x,
                            struct UmbralSeriesResult *out);

/**
 * Anger function 𝐉_ν(x).
 */
enum UmbralStatus umbral_anger(const struct UmbralPolicy *policy, double nu, double x, double *out);

/**
 * Weber function 𝐄_ν(x).
 */
enum UmbralStatus umbral_weber(const struct UmbralPolicy *policy, double nu, double x, double *out);

enum UmbralStatus umbral_gamma(double x, double *out);

/**
 * 1/Γ(x); exact zero at the poles.
 */
enum UmbralStatus umbral_rgamma(double x, double *out);

/**
 * Number of identities in the catalog.
 */
size_t umbral_identity_count(void);

/**
 * Verifies identity `id` at the point given by `count` parallel
 * name/value arrays.
 */
enum UmbralStatus umbral_verify(const struct UmbralPolicy *policy,
                                const char *id,
                                const char *const *names,
                                const double *values,
                                size_t count,
                                struct UmbralReport *out);

/**
 * Runs every identity over its default grid; free the list with
 * [`umbral_report_list_free`].
 */
enum UmbralStatus umbral_verify_all(const struct UmbralPolicy *policy,
                                    size_t parallelism,
                                    struct UmbralReportList **out);

size_t umbral_report_list_len(const struct UmbralReportList *list);

enum UmbralStatus umbral_report_list_get(const struct UmbralReportList *list,
                                         size_t index,
                                         struct UmbralReport *out);

void umbral_report_list_free(struct UmbralReportList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UMBRAL_SPECIAL_H */
