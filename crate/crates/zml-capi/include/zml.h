#ifndef ZML_H
#define ZML_H

/* Generated by cbindgen from zml-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible C-ABI call.
 */
typedef enum ZmlStatus {
  ZML_STATUS_OK = 0,
  ZML_STATUS_NULL_POINTER = 1,
  ZML_STATUS_INVALID_ARGUMENT = 2,
  ZML_STATUS_POLE_AT_ONE = 3,
  ZML_STATUS_RANGE_EXCEEDED = 4,
  ZML_STATUS_NEAR_SINGULARITY = 5,
  ZML_STATUS_UNRESOLVED = 6,
  ZML_STATUS_MISSED_ZERO = 7,
  ZML_STATUS_SHIFT_OUT_OF_RANGE = 8,
  ZML_STATUS_CUTOFF_TOO_LARGE = 9,
  ZML_STATUS_DOMAIN_VIOLATION = 10,
  ZML_STATUS_ALPHA_OUT_OF_RANGE = 11,
  ZML_STATUS_IO_ERROR = 12,
  ZML_STATUS_CACHE_FORMAT = 13,
} ZmlStatus;

/**
 * Opaque evaluation configuration handle.
 */
typedef struct ZmlConfig ZmlConfig;

/**
 * Opaque zero-ordinate table handle.
 */
typedef struct ZmlZeroTable ZmlZeroTable;

/**
 * Flat mean-square report.
 */
typedef struct ZmlMeanSquare {
  double sigma;
  double t;
  double t_max;
  double observed_s;
  double main_m;
  double rel_dev;
  uint64_t n_zeros;
} ZmlMeanSquare;

/**
 * Flat double-sum decomposition.
 */
typedef struct ZmlDoubleSum {
  double a1;
  double a2_re;
  double a2_im;
  double a;
  double r_est;
} ZmlDoubleSum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Short static description of a status code.
 */
const char *zml_status_str(enum ZmlStatus status);

/**
 * New configuration with the default accuracy contract.
 */
struct ZmlConfig *zml_config_new(void);

/**
 * Release a configuration handle. NULL is a no-op.
 *
 * # Safety
 * `cfg` must be NULL or a pointer from [`zml_config_new`] not yet freed.
 */
void zml_config_free(struct ZmlConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live pointer from [`zml_config_new`].
 */
enum ZmlStatus zml_config_set_max_t(struct ZmlConfig *cfg, double max_t);

/**
 * # Safety
 * `cfg` must be a live pointer from [`zml_config_new`].
 */
enum ZmlStatus zml_config_set_target_abs_err(struct ZmlConfig *cfg, double target_abs_err);

/**
 * # Safety
 * `cfg` must be a live pointer from [`zml_config_new`].
 */
double zml_config_max_t(const struct ZmlConfig *cfg);

/**
 * zeta(re + i im).
 *
 * # Safety
 * `cfg` must be live; `out_re`, `out_im` must be writable.
 */
enum ZmlStatus zml_zeta(const struct ZmlConfig *cfg,
                        double re,
                        double im,
                        double *out_re,
                        double *out_im);

/**
 * zeta'(s)/zeta(s).
 *
 * # Safety
 * `cfg` must be live; `out_re`, `out_im` must be writable.
 */
enum ZmlStatus zml_zeta_log_derivative(const struct ZmlConfig *cfg,
                                       double re,
                                       double im,
                                       double *out_re,
                                       double *out_im);

/**
 * Riemann-Siegel theta; total on the reals.
 */
double zml_riemann_siegel_theta(double t);

/**
 * Hardy Z(t).
 *
 * # Safety
 * `cfg` must be live; `out` must be writable.
 */
enum ZmlStatus zml_hardy_z(const struct ZmlConfig *cfg, double t, double *out);

/**
 * (T/2pi) log(T/2pi e); NaN for T <= 0.
 */
double zml_rvm_main_term(double t_max);

/**
 * Exact zero count N(T) by the argument principle.
 *
 * # Safety
 * `cfg` must be live; `out` must be writable.
 */
enum ZmlStatus zml_count_zeros(const struct ZmlConfig *cfg, double t_max, uint64_t *out);

/**
 * Localize every ordinate in (t_lo, t_hi]; on success `*out` owns the table.
 *
 * # Safety
 * `cfg` must be live; `out` must be writable.
 */
enum ZmlStatus zml_find_zeros(const struct ZmlConfig *cfg,
                              double t_lo,
                              double t_hi,
                              struct ZmlZeroTable **out);

/**
 * Release a table handle. NULL is a no-op.
 *
 * # Safety
 * `table` must be NULL or an owned pointer not yet freed.
 */
void zml_zero_table_free(struct ZmlZeroTable *table);

/**
 * # Safety
 * `table` must be live.
 */
uint64_t zml_zero_table_len(const struct ZmlZeroTable *table);

/**
 * # Safety
 * `table` must be live.
 */
double zml_zero_table_t_max(const struct ZmlZeroTable *table);

/**
 * Fetch the idx-th ordinate (ascending, 0-based).
 *
 * # Safety
 * `table` must be live; `out` must be writable.
 */
enum ZmlStatus zml_zero_table_ordinate(const struct ZmlZeroTable *table, uint64_t idx, double *out);

/**
 * Persist the table in the plain-text cache format.
 *
 * # Safety
 * `table` must be live; `path` must be a NUL-terminated UTF-8 string.
 */
enum ZmlStatus zml_zero_table_save(const struct ZmlZeroTable *table, const char *path);

/**
 * Load a table from the plain-text cache format.
 *
 * # Safety
 * `path` must be a NUL-terminated UTF-8 string; `out` must be writable.
 */
enum ZmlStatus zml_zero_table_load(const char *path, struct ZmlZeroTable **out);

/**
 * Lambda(n); NaN for n = 0.
 */
double zml_von_mangoldt(uint64_t n);

/**
 * Lambda on the reals with a snap window; NaN outside x > 1, eps >= 0.
 */
double zml_von_mangoldt_real(double x, double eps);

/**
 * Distance to the nearest other prime power; NaN for x <= 1.
 */
double zml_nearest_prime_power_distance(double x);

/**
 * Compensated sum of x^{i gamma} over the table.
 *
 * # Safety
 * `table` must be live; `out_re`, `out_im` must be writable.
 */
enum ZmlStatus zml_landau_sum(const struct ZmlZeroTable *table,
                              double x,
                              double *out_re,
                              double *out_im);

/**
 * -(T/2pi) Lambda(x)/sqrt(x); NaN on invalid arguments.
 */
double zml_landau_main_term(double x, double t_max);

/**
 * Landau error envelope with constant c; NaN on invalid arguments.
 */
double zml_landau_error_envelope(double x, double t_max, double c);

/**
 * Discrete mean square of |zeta(sigma + i(t + gamma))|^2 with main term.
 *
 * # Safety
 * `cfg` and `table` must be live; `out` must be writable.
 */
enum ZmlStatus zml_discrete_mean_square(const struct ZmlConfig *cfg,
                                        const struct ZmlZeroTable *table,
                                        double sigma,
                                        double t,
                                        struct ZmlMeanSquare *out);

/**
 * Two-term mean-square main term.
 *
 * # Safety
 * `cfg` must be live; `out` must be writable.
 */
enum ZmlStatus zml_mean_square_main_term(const struct ZmlConfig *cfg,
                                         double sigma,
                                         double t,
                                         double t_max,
                                         double *out);

/**
 * A1 + 2 Re A2 decomposition with measured remainder.
 *
 * # Safety
 * `cfg` and `table` must be live; `out` must be writable.
 */
enum ZmlStatus zml_dirichlet_double_sum(const struct ZmlConfig *cfg,
                                        const struct ZmlZeroTable *table,
                                        double sigma,
                                        double t,
                                        double delta,
                                        struct ZmlDoubleSum *out);

/**
 * Sum of |gamma + t|^{-2 lambda} and its ratio to T |T+t|^{-2 lambda} log T.
 *
 * # Safety
 * `table` must be live; `out_sum`, `out_ratio` must be writable.
 */
enum ZmlStatus zml_gamma_shift_partial_sum(const struct ZmlZeroTable *table,
                                           double t,
                                           double lambda,
                                           double *out_sum,
                                           double *out_ratio);

/**
 * Critical-line sinc-factor main term; NaN for t_max <= 1.
 */
double zml_critical_line_main_term(double alpha, double t_max);

/**
 * Critical-line shifted mean square against the sinc main term.
 *
 * # Safety
 * `cfg` and `table` must be live; `out_observed`, `out_main` must be writable.
 */
enum ZmlStatus zml_critical_line_shifted_meansq(const struct ZmlConfig *cfg,
                                                const struct ZmlZeroTable *table,
                                                double alpha,
                                                double *out_observed,
                                                double *out_main);

/**
 * observed_S / (T log T + |t|^eps).
 *
 * # Safety
 * `cfg` and `table` must be live; `out` must be writable.
 */
enum ZmlStatus zml_uniform_bound_ratio(const struct ZmlConfig *cfg,
                                       const struct ZmlZeroTable *table,
                                       double sigma,
                                       double t,
                                       double eps,
                                       double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZML_H */
