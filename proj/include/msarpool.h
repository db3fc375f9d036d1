/*
 * msarpool — density forecasts from Bayesian Markov-switching AR models
 * estimated under multiple prior views, pooled and optimized against log
 * scores or PIT uniformity.
 *
 * C interface of the shared library. All heap objects are opaque handles
 * released with the matching *_free call. Fallible calls return msar_status;
 * on failure msar_last_error() describes what went wrong (thread-local).
 */
#ifndef MSARPOOL_H
#define MSARPOOL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msar_status {
  MSAR_OK = 0,
  MSAR_ERR_VALIDATION = 1, /* bad inputs: shapes, ranges, malformed files */
  MSAR_ERR_NUMERIC = 2,    /* numerical failure inside an algorithm */
} msar_status;

typedef struct msar_series msar_series;       /* quarterly time series */
typedef struct msar_catalogue msar_catalogue; /* ordered set of prior views */
typedef struct msar_draws msar_draws;         /* MCMC draw archive */
typedef struct msar_density msar_density;     /* one-period forecast density */
typedef struct msar_report msar_report;       /* backtest evaluation report */

const char* msar_version(void);
const char* msar_last_error(void);

/* --------------------------------------------------------------------- */
/* Time series                                                           */

/* CSV with a header row, a date column (YYYYQn or YYYY-MM-DD) and a value
 * column. Pass NULL column names to use the first two columns, NULL bounds
 * to keep the full range. year_on_year != 0 treats the input as levels and
 * converts to percent year-on-year growth (drops the first 4 quarters). */
msar_status msar_series_load_csv(const char* path, const char* date_column,
                                 const char* value_column, const char* start,
                                 const char* end, int year_on_year,
                                 msar_series** out);
msar_status msar_series_create(const char* start_quarter, const double* values,
                               size_t count, msar_series** out);
msar_status msar_series_window(const msar_series* s, const char* start,
                               const char* end, msar_series** out);
size_t msar_series_length(const msar_series* s);
double msar_series_value(const msar_series* s, size_t index);
msar_status msar_series_period(const msar_series* s, size_t index, char* buffer,
                               size_t buffer_size);
msar_status msar_series_write_csv(const msar_series* s, const char* path);
void msar_series_free(msar_series* s);

/* --------------------------------------------------------------------- */
/* View catalogues                                                       */

/* The 13-view configuration: 5 diffuse views (K = 1..5) plus 8 views derived
 * from the bundled supervisory stress-test scenarios (CSV path required). */
msar_status msar_catalogue_paper(const char* scenario_csv, msar_catalogue** out);
/* Diffuse views only, K = 1..k_max. */
msar_status msar_catalogue_vague(int k_max, msar_catalogue** out);
size_t msar_catalogue_size(const msar_catalogue* c);
int msar_catalogue_view_id(const msar_catalogue* c, size_t index);
int msar_catalogue_view_regimes(const msar_catalogue* c, size_t index);
int msar_catalogue_view_is_scenario(const msar_catalogue* c, size_t index);
/* Regime intercept prior mean, k in 0..K-1. */
msar_status msar_catalogue_view_intercept_mean(const msar_catalogue* c, size_t index,
                                               int k, double* out);
void msar_catalogue_free(msar_catalogue* c);

/* --------------------------------------------------------------------- */
/* Gibbs sampler, draw archives, marginal likelihood                     */

typedef struct msar_sampler_config {
  int burn_in;   /* default 1000 */
  int keep;      /* default 1000 */
  int thin;      /* default 1 */
  uint64_t seed; /* default 0 */
} msar_sampler_config;
void msar_sampler_config_default(msar_sampler_config* cfg);

/* Runs the sampler for one view on the series as given (window the series
 * first to estimate on a subsample). Deterministic for a fixed seed. */
msar_status msar_gibbs_run(const msar_series* y, const msar_catalogue* c,
                           size_t view_index, const msar_sampler_config* cfg,
                           msar_draws** out);
size_t msar_draws_count(const msar_draws* d);
msar_status msar_draws_save(const msar_draws* d, const char* path);
msar_status msar_draws_load(const char* path, msar_draws** out);
void msar_draws_free(msar_draws* d);

/* Bridge-sampling estimate of log p(y | view) from the draw archive. */
msar_status msar_log_marginal_likelihood(const msar_series* y, const msar_catalogue* c,
                                         size_t view_index, const msar_draws* d,
                                         double* out);

/* --------------------------------------------------------------------- */
/* Forecast densities                                                    */

/* kernel_fit != 0 switches from the exact per-draw mixture to a Gaussian
 * kernel fit (Silverman bandwidth) of the simulated predictive sample. */
msar_status msar_forecast(const msar_series* y, const msar_draws* d, int horizon,
                          int kernel_fit, msar_density** out);
double msar_density_pdf(const msar_density* f, double y);
double msar_density_cdf(const msar_density* f, double y);
double msar_density_mean(const msar_density* f);
msar_status msar_density_quantile(const msar_density* f, double probability,
                                  double* out);
size_t msar_density_size(const msar_density* f);
msar_status msar_density_component(const msar_density* f, size_t index, double* mean,
                                   double* variance, double* weight);
/* origin_period,view_id,component,mean,variance,weight rows. */
msar_status msar_density_write_csv(const msar_density* f, const char* path);
void msar_density_free(msar_density* f);

/* --------------------------------------------------------------------- */
/* Recursive backtest                                                    */

typedef struct msar_backtest_params {
  const char* t0;   /* sample start, e.g. "1948Q1" */
  const char* T0;   /* shortest estimation window end */
  const char* Tbar; /* longest estimation window end */
  int R;            /* optimization window length (quarters) */
  int horizon;
  int burn_in, keep, thin;
  uint64_t seed;
  int rolling_width;       /* AR rolling benchmark window, default 80 */
  int kernel_fit;          /* replication mode for all forecasts */
  int flat_equal_weights;  /* uniform over views instead of two-level */
  int jobs;                /* parallel sampler jobs; 0 = hardware threads */
  const char* methods;     /* comma-separated tags, NULL = all:
                              equal-weights,equal-priors,max-ml,
                              w1*,pi1*,w2*,pi2*,ar-recursive,ar-rolling */
  const char* cache_dir;   /* NULL disables the on-disk forecast cache */
  int verbose;
} msar_backtest_params;
void msar_backtest_params_default(msar_backtest_params* p);

msar_status msar_backtest_run(const msar_series* y, const msar_catalogue* c,
                              const msar_backtest_params* params, msar_report** out);

msar_status msar_report_save(const msar_report* r, const char* path);
msar_status msar_report_load(const char* path, msar_report** out);
msar_status msar_report_write_csvs(const msar_report* r, const char* outdir);
msar_status msar_report_emit_plots(const msar_report* r, const char* outdir,
                                   const char* fan_method /* NULL = "pi2*" */);
size_t msar_report_period_count(const msar_report* r);
msar_status msar_report_period(const msar_report* r, size_t index, char* buffer,
                               size_t buffer_size);
/* stat: one of apd | ks_stat | ks_p | lb1_p | lb2_p | floored. */
msar_status msar_report_stat(const msar_report* r, const char* method_tag,
                             const char* stat, double* out);
void msar_report_free(msar_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MSARPOOL_H */
