/*
 * iatpcs -- competing-risks inference under improved adaptive type-II
 * progressive censoring with two exponential failure causes.
 *
 * C API of the shared library. All entry points return a status code
 * (IATPCS_OK on success); results travel through out-parameters. Objects
 * with identity are handled through opaque pointers and released with the
 * matching *_free function. Strings produced by the library are released
 * with iatpcs_string_free.
 */
#ifndef IATPCS_H
#define IATPCS_H

#include <stdint.h>

#if defined(_WIN32)
#define IATPCS_API __declspec(dllexport)
#else
#define IATPCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The CLI reuses them as exit codes. */
typedef enum iatpcs_status {
    IATPCS_OK = 0,
    IATPCS_E_USAGE = 2,       /* bad command line (CLI only) */
    IATPCS_E_VALIDATION = 3,  /* structurally invalid input */
    IATPCS_E_NONEXISTENT = 4, /* requested estimate does not exist */
    IATPCS_E_PARSE = 5,       /* malformed text input */
    IATPCS_E_DOMAIN = 6,      /* argument outside mathematical domain */
    IATPCS_E_IO = 7,          /* filesystem failure (CLI only) */
    IATPCS_E_INTERNAL = 8
} iatpcs_status;

IATPCS_API const char *iatpcs_status_name(int status);

/* Message describing the most recent failure on the calling thread. */
IATPCS_API const char *iatpcs_last_error(void);

IATPCS_API const char *iatpcs_version(void);

IATPCS_API void iatpcs_string_free(char *s);

/* ------------------------------------------------------------------ */
/* Latent two-cause exponential model                                  */
/* ------------------------------------------------------------------ */

IATPCS_API int iatpcs_cdf(int cause, double x, double tau1, double tau2, double *out);
IATPCS_API int iatpcs_survival(int cause, double x, double tau1, double tau2, double *out);
IATPCS_API int iatpcs_hazard(int cause, double x, double tau1, double tau2, double *out);
/* Observed minimum: rate tau1+tau2, cause-1 probability tau1/(tau1+tau2). */
IATPCS_API int iatpcs_min_law(double tau1, double tau2, double *total_rate, double *cause1_prob);

/* Numerical kernels. */
IATPCS_API int iatpcs_log_gamma(double x, double *out);
IATPCS_API int iatpcs_normal_quantile(double p, double *out);

/* ------------------------------------------------------------------ */
/* Censoring plans and samples                                         */
/* ------------------------------------------------------------------ */

typedef struct iatpcs_plan iatpcs_plan;

enum { IATPCS_SCHEME_I = 1, IATPCS_SCHEME_II = 2, IATPCS_SCHEME_III = 3 };

/* Standard removal patterns; removals_out must hold m ints. */
IATPCS_API int iatpcs_scheme_removals(int scheme, int n, int m, int *removals_out);

IATPCS_API int iatpcs_plan_new(int n, int m, const int *removals, double t1, double t2,
                               iatpcs_plan **out);
IATPCS_API int iatpcs_plan_scheme(int scheme, int n, int m, double t1, double t2,
                                  iatpcs_plan **out);
IATPCS_API void iatpcs_plan_free(iatpcs_plan *plan);

typedef struct iatpcs_sample iatpcs_sample;

enum { IATPCS_CASE_I = 1, IATPCS_CASE_II = 2, IATPCS_CASE_III = 3 };

IATPCS_API int iatpcs_generate(const iatpcs_plan *plan, double tau1, double tau2, uint64_t seed,
                               iatpcs_sample **out);
IATPCS_API void iatpcs_sample_free(iatpcs_sample *sample);

/* Number of observed failures D. Negative status on error. */
IATPCS_API int iatpcs_sample_size(const iatpcs_sample *sample, int *d);
IATPCS_API int iatpcs_sample_counts(const iatpcs_sample *sample, int *d1, int *d2);
IATPCS_API int iatpcs_sample_case(const iatpcs_sample *sample, int *tag, int *k1, int *k2);
IATPCS_API int iatpcs_sample_termination(const iatpcs_sample *sample, int *r_star, double *t_star);
IATPCS_API int iatpcs_sample_row(const iatpcs_sample *sample, int i, double *time, int *cause,
                                 int *removed);
IATPCS_API int iatpcs_sample_to_csv(const iatpcs_sample *sample, char **out);
IATPCS_API int iatpcs_sample_from_csv(const char *text, iatpcs_sample **out);

/* ------------------------------------------------------------------ */
/* Datasets and threshold replay                                       */
/* ------------------------------------------------------------------ */

typedef struct iatpcs_dataset iatpcs_dataset;

IATPCS_API int iatpcs_dataset_parse(const char *csv_text, iatpcs_dataset **out);
IATPCS_API int iatpcs_dataset_hoel(iatpcs_dataset **out);
IATPCS_API void iatpcs_dataset_free(iatpcs_dataset *dataset);
IATPCS_API int iatpcs_dataset_size(const iatpcs_dataset *dataset, int *n_records);
IATPCS_API int iatpcs_dataset_row(const iatpcs_dataset *dataset, int i, double *time, int *cause);
IATPCS_API int iatpcs_dataset_to_csv(const iatpcs_dataset *dataset, char **out);

/* Reinterprets recorded failures under the plan's thresholds (drops
 * failures at or past t2, zeroes removals from t1 on, recomputes the
 * termination state). */
IATPCS_API int iatpcs_replay(const iatpcs_dataset *dataset, const iatpcs_plan *plan,
                             iatpcs_sample **out);

/* ------------------------------------------------------------------ */
/* Likelihood inference                                                */
/* ------------------------------------------------------------------ */

enum { IATPCS_A_PAPER = 0, IATPCS_A_CORRECTED = 1 };

IATPCS_API int iatpcs_stat_a(const iatpcs_sample *sample, int a_mode, double *out);
IATPCS_API int iatpcs_log_likelihood(double tau1, double tau2, const iatpcs_sample *sample,
                                     int a_mode, double *out);

typedef struct iatpcs_mle_result {
    double tau1_hat;
    double tau2_hat;
    double a_stat;
    double var1;
    double var2;
} iatpcs_mle_result;

IATPCS_API int iatpcs_mle(const iatpcs_sample *sample, int a_mode, iatpcs_mle_result *out);

typedef struct iatpcs_interval {
    double lower;
    double upper;
    double level;
} iatpcs_interval;

IATPCS_API int iatpcs_asymptotic_ci(const iatpcs_mle_result *fit, double gamma,
                                    iatpcs_interval *ci1, iatpcs_interval *ci2);

/* ------------------------------------------------------------------ */
/* Bayesian inference                                                  */
/* ------------------------------------------------------------------ */

typedef struct iatpcs_gamma_prior {
    double a, b; /* tau1 shape, rate */
    double c, d; /* tau2 shape, rate */
} iatpcs_gamma_prior;

typedef struct iatpcs_posterior {
    double shape1, rate1;
    double shape2, rate2;
} iatpcs_posterior;

IATPCS_API int iatpcs_posterior_params(const iatpcs_sample *sample,
                                       const iatpcs_gamma_prior *prior, int a_mode,
                                       iatpcs_posterior *out);
IATPCS_API int iatpcs_estimate_self(const iatpcs_posterior *post, double *tau1, double *tau2);
IATPCS_API int iatpcs_estimate_linex(const iatpcs_posterior *post, double p, double *tau1,
                                     double *tau2);
IATPCS_API int iatpcs_estimate_gelf(const iatpcs_posterior *post, double q, double *tau1,
                                    double *tau2);

/* n_draws draws from each marginal posterior into caller buffers. */
IATPCS_API int iatpcs_sample_posterior(const iatpcs_posterior *post, int n_draws, uint64_t seed,
                                       double *tau1_draws, double *tau2_draws);

/* Shortest (1-gamma) window over the sorted draws. */
IATPCS_API int iatpcs_hpd(const double *draws, int n, double gamma, iatpcs_interval *out);

/* Convenience: sample both marginals and return their HPD intervals. */
IATPCS_API int iatpcs_posterior_hpd(const iatpcs_posterior *post, int n_draws, double gamma,
                                    uint64_t seed, iatpcs_interval *hpd1, iatpcs_interval *hpd2);

/* ------------------------------------------------------------------ */
/* Replication studies                                                 */
/* ------------------------------------------------------------------ */

enum { IATPCS_LOSS_SELF = 0, IATPCS_LOSS_LINEX = 1, IATPCS_LOSS_GELF = 2 };

typedef struct iatpcs_loss {
    int kind;
    double param; /* unused for SELF */
} iatpcs_loss;

typedef struct iatpcs_sim iatpcs_sim;

/* Runs `reps` replicates of generate + estimate under the plan. Results
 * are deterministic in (all arguments, seed), regardless of `threads`
 * (0 = hardware concurrency). `scheme_label` is carried into tables. */
IATPCS_API int iatpcs_simulate(const iatpcs_plan *plan, const char *scheme_label, double tau1,
                               double tau2, int reps, const iatpcs_gamma_prior *priors,
                               const char *const *prior_labels, int n_priors,
                               const iatpcs_loss *losses, int n_losses, double level,
                               int hpd_draws, uint64_t seed, int a_mode, int threads,
                               iatpcs_sim **out);
IATPCS_API void iatpcs_sim_free(iatpcs_sim *sim);

IATPCS_API int iatpcs_sim_skipped(const iatpcs_sim *sim, long *skipped);

/* Point-estimator summary. `estimator` is "MLE" or "<label>:<loss name>"
 * with loss names "SELF", "LINEX(p=...)", "GELF(q=...)" as rendered in
 * the tables. `param` is 1 or 2. */
IATPCS_API int iatpcs_sim_point_stats(const iatpcs_sim *sim, const char *estimator, int param,
                                      double *average, double *mse, double *mse_stderr);

/* Interval summary. `method` is "ACI" or "HPD[<label>]". */
IATPCS_API int iatpcs_sim_interval_stats(const iatpcs_sim *sim, const char *method, int param,
                                         double *avg_lower, double *avg_upper, double *avg_length,
                                         double *coverage);

enum { IATPCS_TABLE_POINTS = 0, IATPCS_TABLE_INTERVALS = 1 };
enum { IATPCS_FORMAT_CSV = 0, IATPCS_FORMAT_MARKDOWN = 1 };

/* Renders one simulation as table rows. For CSV, `with_header` controls
 * whether the column header line is included so several runs can be
 * concatenated into one file. */
IATPCS_API int iatpcs_sim_render(const iatpcs_sim *sim, int what, int format, int with_header,
                                 char **out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IATPCS_H */
