/*
 * tvar: time-varying AR sieve fitting, stability testing and forecasting for
 * locally stationary time series.
 *
 * C interface over the C++ core. Objects are opaque handles created by
 * tvar_*_create / tvar_*_run functions and released with the matching
 * tvar_*_free. Every fallible call returns a tvar_status; on failure the
 * message is available from tvar_last_error() on the calling thread until the
 * next failing call. Strings returned through char** are owned by the caller
 * and released with tvar_string_free.
 */
#ifndef TVAR_TVAR_H
#define TVAR_TVAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TVAR_BUILDING_LIBRARY)
#define TVAR_API __declspec(dllexport)
#else
#define TVAR_API __declspec(dllimport)
#endif
#else
#define TVAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvar_status {
  TVAR_OK = 0,
  TVAR_E_DOMAIN = 1,
  TVAR_E_DIMENSION = 2,
  TVAR_E_SINGULAR = 3,
  TVAR_E_UPDC = 4,
  TVAR_E_CONFIG = 5,
  TVAR_E_PARSE = 6,
  TVAR_E_DATA = 7,
  TVAR_E_UNSUPPORTED = 8,
  TVAR_E_IO = 9,
  TVAR_E_INVALID_ARGUMENT = 10,
  TVAR_E_INTERNAL = 11
} tvar_status;

typedef struct tvar_series tvar_series;
typedef struct tvar_fit tvar_fit;
typedef struct tvar_stability tvar_stability;
typedef struct tvar_forecast tvar_forecast;
typedef struct tvar_tuning tvar_tuning;
typedef struct tvar_mc tvar_mc;

TVAR_API const char* tvar_version(void);
TVAR_API const char* tvar_status_name(tvar_status status);
TVAR_API const char* tvar_last_error(void);
TVAR_API void tvar_string_free(char* str);

/* Worker threads for parallel operations; 0 = hardware concurrency. Never
 * changes numeric results. */
TVAR_API void tvar_set_threads(int threads);
TVAR_API int tvar_get_threads(void);

/* ---- series ------------------------------------------------------------ */

TVAR_API tvar_status tvar_series_from_array(const double* values, size_t n, tvar_series** out);
TVAR_API tvar_status tvar_series_read_csv(const char* path, tvar_series** out);
TVAR_API tvar_status tvar_series_write_csv(const tvar_series* series, const char* path);
TVAR_API size_t tvar_series_length(const tvar_series* series);
TVAR_API const double* tvar_series_values(const tvar_series* series);
TVAR_API void tvar_series_free(tvar_series* series);

/* ---- basis ------------------------------------------------------------- */

/* family: "fourier", "legendre" or "daub<N>" (N in 1..10). out holds c values. */
TVAR_API tvar_status tvar_basis_eval(const char* family, int c, double t, double* out);

/* ---- sieve fit --------------------------------------------------------- */

TVAR_API tvar_status tvar_fit_create(const tvar_series* series, int b, const char* family, int c, tvar_fit** out);
TVAR_API tvar_status tvar_fit_phi(const tvar_fit* fit, int j, double t, double* out);
TVAR_API tvar_status tvar_fit_dims(const tvar_fit* fit, int* n, int* b, int* c);
TVAR_API tvar_status tvar_fit_to_json(const tvar_fit* fit, char** json);
TVAR_API void tvar_fit_free(tvar_fit* fit);

/* ---- stability test ---------------------------------------------------- */

typedef struct tvar_test_options {
  const char* family; /* basis family name */
  int c;              /* 0: choose by cross-validation */
  int b_star;         /* 0: choose by cross-validation */
  int m;              /* 0: choose by minimum volatility */
  int bootstrap_draws;
  uint64_t seed;
  int include_intercept; /* nonzero: T_g including phi_0 */
  int demean;
} tvar_test_options;

TVAR_API void tvar_test_options_init(tvar_test_options* options);
TVAR_API tvar_status tvar_test_run(const tvar_series* series, const tvar_test_options* options, tvar_stability** out);
TVAR_API double tvar_stability_statistic(const tvar_stability* result);
TVAR_API double tvar_stability_p_value(const tvar_stability* result);
TVAR_API size_t tvar_stability_draw_count(const tvar_stability* result);
TVAR_API const double* tvar_stability_draws(const tvar_stability* result);
TVAR_API tvar_status tvar_stability_to_json(const tvar_stability* result, int include_draws, char** json);
TVAR_API void tvar_stability_free(tvar_stability* result);

/* ---- forecast ---------------------------------------------------------- */

typedef struct tvar_forecast_options {
  const char* family;
  int c; /* 0: choose by cross-validation */
  int b; /* 0: choose by cross-validation */
  int demean;
} tvar_forecast_options;

TVAR_API void tvar_forecast_options_init(tvar_forecast_options* options);
TVAR_API tvar_status tvar_forecast_run(const tvar_series* series, const tvar_forecast_options* options,
                                       tvar_forecast** out);
TVAR_API double tvar_forecast_point(const tvar_forecast* report);
TVAR_API double tvar_forecast_mse(const tvar_forecast* report);
TVAR_API tvar_status tvar_forecast_to_json(const tvar_forecast* report, char** json);
TVAR_API void tvar_forecast_free(tvar_forecast* report);

/* ---- tuning ------------------------------------------------------------ */

typedef struct tvar_tune_options {
  const char* family;
  const int* b_candidates; /* NULL: defaults */
  size_t b_count;
  const int* c_candidates;
  size_t c_count;
  const int* m_candidates;
  size_t m_count;
  int validation_length; /* 0: floor(3 log2 n) */
  int h0;
  int for_testing; /* nonzero: exclude c = 1 from the default grid */
} tvar_tune_options;

TVAR_API void tvar_tune_options_init(tvar_tune_options* options);
TVAR_API tvar_status tvar_tune_run(const tvar_series* series, const tvar_tune_options* options, tvar_tuning** out);
TVAR_API tvar_status tvar_tuning_selection(const tvar_tuning* tuning, int* b, int* c, int* m);
TVAR_API tvar_status tvar_tuning_to_json(const tvar_tuning* tuning, char** json);
TVAR_API void tvar_tuning_free(tvar_tuning* tuning);

/* ---- simulation -------------------------------------------------------- */

/* model: "tvar2-null", "tvar2-alt", "tvma2-null|alt", "setar-null|alt",
 * "markov-null|alt", "bilinear-null|alt", "arma11", "setar-stat",
 * "nslinear6", "piecewise7". burn_in 0 selects 512. */
TVAR_API tvar_status tvar_simulate(const char* model, double delta, size_t n, int burn_in, uint64_t seed,
                                   tvar_series** out);

typedef struct tvar_mc_options {
  const char* const* models;
  size_t model_count;
  const size_t* lengths;
  size_t length_count;
  const char* const* families;
  size_t family_count;
  const double* alphas;
  size_t alpha_count;
  double delta;
  int reps;
  int bootstrap_draws;
  int b_star; /* 0: tuned per replicate */
  int c;      /* 0: tuned per replicate */
  int m;      /* 0: tuned per replicate */
  uint64_t seed;
} tvar_mc_options;

TVAR_API void tvar_mc_options_init(tvar_mc_options* options);
TVAR_API tvar_status tvar_mc_run(const tvar_mc_options* options, tvar_mc** out);
/* Rejection rate for grid cell (model, length, family, alpha) by index. */
TVAR_API tvar_status tvar_mc_rate(const tvar_mc* mc, size_t model, size_t length, size_t family, size_t alpha,
                                  double* rate);
TVAR_API tvar_status tvar_mc_to_json(const tvar_mc* mc, char** json);
TVAR_API void tvar_mc_free(tvar_mc* mc);

/* ---- covariance oracle ------------------------------------------------- */

typedef struct tvar_updc_report {
  double kappa_min;
  int pass;
  double t_at_min;
  double omega_at_min;
  double truncation_bound;
} tvar_updc_report;

/* Local spectral density minimum over a uniform t grid on [0,1] and omega
 * grid on [-pi, pi] for a linear simulation model (tvar2-*, tvma2-*, arma11,
 * nslinear6) or "white-noise". */
TVAR_API tvar_status tvar_updc_check(const char* model, double delta, size_t t_points, size_t omega_points,
                                     int truncation, tvar_updc_report* out);
TVAR_API tvar_status tvar_updc_to_json(const char* model, double delta, const tvar_updc_report* report, char** json);

#ifdef __cplusplus
}
#endif

#endif /* TVAR_TVAR_H */
