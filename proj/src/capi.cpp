#include "tvar/tvar.h"

#include "tvar/basis.hpp"
#include "tvar/cov_oracle.hpp"
#include "tvar/error.hpp"
#include "tvar/json_io.hpp"
#include "tvar/parallel.hpp"
#include "tvar/pipeline.hpp"
#include "tvar/series.hpp"
#include "tvar/simgen.hpp"
#include "tvar/sieve_fit.hpp"
#include "tvar/version.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

struct tvar_series {
  tvar::TimeSeries series;
};

struct tvar_fit {
  tvar::SieveFit fit;
};

struct tvar_stability {
  tvar::AutoTestOutcome outcome;
  bool demean = false;
};

struct tvar_forecast {
  tvar::AutoForecastOutcome outcome;
  bool demean = false;
};

struct tvar_tuning {
  tvar::TuningResult result;
};

struct tvar_mc {
  tvar::McGrid grid;
};

namespace {

thread_local std::string g_last_error;

tvar_status status_of(tvar::ErrorCode code) {
  switch (code) {
    case tvar::ErrorCode::Domain: return TVAR_E_DOMAIN;
    case tvar::ErrorCode::Dimension: return TVAR_E_DIMENSION;
    case tvar::ErrorCode::SingularDesign: return TVAR_E_SINGULAR;
    case tvar::ErrorCode::UpdcViolation: return TVAR_E_UPDC;
    case tvar::ErrorCode::Config: return TVAR_E_CONFIG;
    case tvar::ErrorCode::Parse: return TVAR_E_PARSE;
    case tvar::ErrorCode::Data: return TVAR_E_DATA;
    case tvar::ErrorCode::Unsupported: return TVAR_E_UNSUPPORTED;
    case tvar::ErrorCode::Io: return TVAR_E_IO;
  }
  return TVAR_E_INTERNAL;
}

tvar_status set_error(tvar_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
tvar_status guarded(F&& body) {
  try {
    body();
    return TVAR_OK;
  } catch (const tvar::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(TVAR_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(TVAR_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(TVAR_E_INTERNAL, "unknown exception");
  }
}

tvar_status null_argument(const char* name) {
  return set_error(TVAR_E_INVALID_ARGUMENT, std::string("null argument: ") + name);
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::string family_or_default(const char* family) { return family != nullptr ? family : "fourier"; }

std::vector<int> int_list(const int* values, size_t count) {
  if (values == nullptr || count == 0) return {};
  return {values, values + count};
}

}  // namespace

extern "C" {

const char* tvar_version(void) { return tvar::kVersion; }

const char* tvar_status_name(tvar_status status) {
  switch (status) {
    case TVAR_OK: return "ok";
    case TVAR_E_DOMAIN: return "domain error";
    case TVAR_E_DIMENSION: return "dimension error";
    case TVAR_E_SINGULAR: return "singular design";
    case TVAR_E_UPDC: return "UPDC violation";
    case TVAR_E_CONFIG: return "configuration error";
    case TVAR_E_PARSE: return "parse error";
    case TVAR_E_DATA: return "data error";
    case TVAR_E_UNSUPPORTED: return "unsupported";
    case TVAR_E_IO: return "I/O error";
    case TVAR_E_INVALID_ARGUMENT: return "invalid argument";
    case TVAR_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tvar_last_error(void) { return g_last_error.c_str(); }

void tvar_string_free(char* str) { std::free(str); }

void tvar_set_threads(int threads) { tvar::set_thread_count(threads < 0 ? 0 : threads); }

int tvar_get_threads(void) { return static_cast<int>(tvar::thread_count()); }

/* ---- series ---- */

tvar_status tvar_series_from_array(const double* values, size_t n, tvar_series** out) {
  if (out == nullptr) return null_argument("out");
  if (values == nullptr && n > 0) return null_argument("values");
  *out = nullptr;
  return guarded([&] {
    for (size_t i = 0; i < n; ++i)
      tvar::require(std::isfinite(values[i]), tvar::ErrorCode::Data,
                    "non-finite value at index " + std::to_string(i));
    auto handle = std::make_unique<tvar_series>();
    handle->series.values.assign(values, values + n);
    handle->series.source = "<array>";
    *out = handle.release();
  });
}

tvar_status tvar_series_read_csv(const char* path, tvar_series** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<tvar_series>();
    handle->series = tvar::read_csv(path);
    *out = handle.release();
  });
}

tvar_status tvar_series_write_csv(const tvar_series* series, const char* path) {
  if (series == nullptr) return null_argument("series");
  if (path == nullptr) return null_argument("path");
  return guarded([&] { tvar::write_csv(series->series, path); });
}

size_t tvar_series_length(const tvar_series* series) { return series != nullptr ? series->series.size() : 0; }

const double* tvar_series_values(const tvar_series* series) {
  return series != nullptr ? series->series.values.data() : nullptr;
}

void tvar_series_free(tvar_series* series) { delete series; }

/* ---- basis ---- */

tvar_status tvar_basis_eval(const char* family, int c, double t, double* out) {
  if (family == nullptr) return null_argument("family");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const tvar::Basis basis(tvar::BasisSpec::parse(family, c));
    basis.eval(t, std::span<double>(out, static_cast<size_t>(c)));
  });
}

/* ---- fit ---- */

tvar_status tvar_fit_create(const tvar_series* series, int b, const char* family, int c, tvar_fit** out) {
  if (series == nullptr) return null_argument("series");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<tvar_fit>();
    handle->fit = tvar::fit(series->series.view(), b, tvar::BasisSpec::parse(family_or_default(family), c));
    *out = handle.release();
  });
}

tvar_status tvar_fit_phi(const tvar_fit* fit, int j, double t, double* out) {
  if (fit == nullptr) return null_argument("fit");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    tvar::require(j >= 0 && j <= fit->fit.b, tvar::ErrorCode::Domain,
                  "lag " + std::to_string(j) + " outside 0.." + std::to_string(fit->fit.b));
    *out = tvar::phi_hat(fit->fit, j, t);
  });
}

tvar_status tvar_fit_dims(const tvar_fit* fit, int* n, int* b, int* c) {
  if (fit == nullptr) return null_argument("fit");
  if (n != nullptr) *n = fit->fit.n;
  if (b != nullptr) *b = fit->fit.b;
  if (c != nullptr) *c = fit->fit.c;
  return TVAR_OK;
}

tvar_status tvar_fit_to_json(const tvar_fit* fit, char** json) {
  if (fit == nullptr) return null_argument("fit");
  if (json == nullptr) return null_argument("json");
  *json = nullptr;
  return guarded([&] {
    *json = copy_string(tvar::json::dump(tvar::json::document("sieve_fit", tvar::json::sieve_fit(fit->fit))));
  });
}

void tvar_fit_free(tvar_fit* fit) { delete fit; }

/* ---- stability test ---- */

void tvar_test_options_init(tvar_test_options* options) {
  if (options == nullptr) return;
  options->family = "fourier";
  options->c = 0;
  options->b_star = 0;
  options->m = 0;
  options->bootstrap_draws = 1000;
  options->seed = 20240101;
  options->include_intercept = 0;
  options->demean = 0;
}

tvar_status tvar_test_run(const tvar_series* series, const tvar_test_options* options, tvar_stability** out) {
  if (series == nullptr) return null_argument("series");
  if (options == nullptr) return null_argument("options");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    tvar::AutoTestOptions opts;
    opts.family = tvar::BasisSpec::parse(family_or_default(options->family), options->c > 0 ? options->c : 2);
    opts.c = options->c;
    opts.b_star = options->b_star;
    opts.m = options->m;
    opts.bootstrap_draws = options->bootstrap_draws;
    opts.seed = options->seed;
    opts.include_intercept = options->include_intercept != 0;
    opts.demean = options->demean != 0;
    auto handle = std::make_unique<tvar_stability>();
    handle->outcome = tvar::run_test_auto(series->series.view(), opts);
    handle->demean = opts.demean;
    *out = handle.release();
  });
}

double tvar_stability_statistic(const tvar_stability* result) {
  return result != nullptr ? result->outcome.result.statistic : std::nan("");
}

double tvar_stability_p_value(const tvar_stability* result) {
  return result != nullptr ? result->outcome.result.p_value : std::nan("");
}

size_t tvar_stability_draw_count(const tvar_stability* result) {
  return result != nullptr ? result->outcome.result.draws.size() : 0;
}

const double* tvar_stability_draws(const tvar_stability* result) {
  return result != nullptr ? result->outcome.result.draws.data() : nullptr;
}

tvar_status tvar_stability_to_json(const tvar_stability* result, int include_draws, char** json) {
  if (result == nullptr) return null_argument("result");
  if (json == nullptr) return null_argument("json");
  *json = nullptr;
  return guarded([&] {
    auto payload = tvar::json::stability_result(result->outcome.result, include_draws != 0);
    payload["demean"] = result->demean;
    if (result->outcome.tuning) payload["tuning"] = tvar::json::tuning_result(*result->outcome.tuning);
    *json = copy_string(tvar::json::dump(tvar::json::document("stability_result", std::move(payload))));
  });
}

void tvar_stability_free(tvar_stability* result) { delete result; }

/* ---- forecast ---- */

void tvar_forecast_options_init(tvar_forecast_options* options) {
  if (options == nullptr) return;
  options->family = "fourier";
  options->c = 0;
  options->b = 0;
  options->demean = 0;
}

tvar_status tvar_forecast_run(const tvar_series* series, const tvar_forecast_options* options, tvar_forecast** out) {
  if (series == nullptr) return null_argument("series");
  if (options == nullptr) return null_argument("options");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    tvar::AutoForecastOptions opts;
    opts.family = tvar::BasisSpec::parse(family_or_default(options->family), options->c > 0 ? options->c : 1);
    opts.b = options->b;
    opts.c = options->c;
    opts.demean = options->demean != 0;
    auto handle = std::make_unique<tvar_forecast>();
    handle->outcome = tvar::forecast_auto(series->series.view(), opts);
    handle->demean = opts.demean;
    *out = handle.release();
  });
}

double tvar_forecast_point(const tvar_forecast* report) {
  return report != nullptr ? report->outcome.report.point : std::nan("");
}

double tvar_forecast_mse(const tvar_forecast* report) {
  return report != nullptr ? report->outcome.report.mse.value : std::nan("");
}

tvar_status tvar_forecast_to_json(const tvar_forecast* report, char** json) {
  if (report == nullptr) return null_argument("report");
  if (json == nullptr) return null_argument("json");
  *json = nullptr;
  return guarded([&] {
    auto payload = tvar::json::forecast_report(report->outcome.report);
    payload["demean"] = report->demean;
    if (report->outcome.cv) payload["cv"] = tvar::json::cv_result(*report->outcome.cv);
    *json = copy_string(tvar::json::dump(tvar::json::document("forecast_report", std::move(payload))));
  });
}

void tvar_forecast_free(tvar_forecast* report) { delete report; }

/* ---- tuning ---- */

void tvar_tune_options_init(tvar_tune_options* options) {
  if (options == nullptr) return;
  *options = tvar_tune_options{};
  options->family = "fourier";
  options->h0 = 3;
  options->for_testing = 1;
}

tvar_status tvar_tune_run(const tvar_series* series, const tvar_tune_options* options, tvar_tuning** out) {
  if (series == nullptr) return null_argument("series");
  if (options == nullptr) return null_argument("options");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    tvar::TuningOptions opts;
    opts.family = tvar::BasisSpec::parse(family_or_default(options->family), 1);
    opts.b_candidates = int_list(options->b_candidates, options->b_count);
    opts.c_candidates = int_list(options->c_candidates, options->c_count);
    opts.m_candidates = int_list(options->m_candidates, options->m_count);
    opts.validation_length = options->validation_length;
    opts.h0 = options->h0;
    opts.for_testing = options->for_testing != 0;
    auto handle = std::make_unique<tvar_tuning>();
    handle->result = tvar::tune(series->series.view(), opts);
    *out = handle.release();
  });
}

tvar_status tvar_tuning_selection(const tvar_tuning* tuning, int* b, int* c, int* m) {
  if (tuning == nullptr) return null_argument("tuning");
  if (b != nullptr) *b = tuning->result.b_opt;
  if (c != nullptr) *c = tuning->result.c_opt;
  if (m != nullptr) *m = tuning->result.m_opt;
  return TVAR_OK;
}

tvar_status tvar_tuning_to_json(const tvar_tuning* tuning, char** json) {
  if (tuning == nullptr) return null_argument("tuning");
  if (json == nullptr) return null_argument("json");
  *json = nullptr;
  return guarded([&] {
    *json = copy_string(
        tvar::json::dump(tvar::json::document("tuning_result", tvar::json::tuning_result(tuning->result))));
  });
}

void tvar_tuning_free(tvar_tuning* tuning) { delete tuning; }

/* ---- simulation ---- */

tvar_status tvar_simulate(const char* model, double delta, size_t n, int burn_in, uint64_t seed, tvar_series** out) {
  if (model == nullptr) return null_argument("model");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    tvar::require(n <= 100000000, tvar::ErrorCode::Config, "series length too large");
    auto spec = tvar::ModelSpec::parse(model, delta, static_cast<int>(n));
    if (burn_in > 0) spec.burn_in = burn_in;
    auto handle = std::make_unique<tvar_series>();
    handle->series = tvar::simulate(spec, seed);
    *out = handle.release();
  });
}

void tvar_mc_options_init(tvar_mc_options* options) {
  if (options == nullptr) return;
  *options = tvar_mc_options{};
  options->delta = 0.35;
  options->reps = 200;
  options->bootstrap_draws = 200;
  options->seed = 1;
}

tvar_status tvar_mc_run(const tvar_mc_options* options, tvar_mc** out) {
  if (options == nullptr) return null_argument("options");
  if (out == nullptr) return null_argument("out");
  if (options->models == nullptr && options->model_count > 0) return null_argument("models");
  if (options->lengths == nullptr && options->length_count > 0) return null_argument("lengths");
  if (options->families == nullptr && options->family_count > 0) return null_argument("families");
  *out = nullptr;
  return guarded([&] {
    tvar::McGridConfig config;
    for (size_t i = 0; i < options->model_count; ++i) {
      tvar::require(options->models[i] != nullptr, tvar::ErrorCode::Config, "null model name");
      config.models.emplace_back(options->models[i]);
    }
    for (size_t i = 0; i < options->length_count; ++i) {
      tvar::require(options->lengths[i] <= 100000000, tvar::ErrorCode::Config, "series length too large");
      config.lengths.push_back(static_cast<int>(options->lengths[i]));
    }
    for (size_t i = 0; i < options->family_count; ++i) {
      tvar::require(options->families[i] != nullptr, tvar::ErrorCode::Config, "null basis family");
      config.families.emplace_back(options->families[i]);
    }
    if (options->alphas != nullptr && options->alpha_count > 0)
      config.alphas.assign(options->alphas, options->alphas + options->alpha_count);
    for (const double a : config.alphas)
      tvar::require(a > 0.0 && a < 1.0, tvar::ErrorCode::Config, "alpha levels must lie in (0, 1)");
    config.delta = options->delta;
    config.reps = options->reps;
    config.test.bootstrap_draws = options->bootstrap_draws;
    config.test.b_star = options->b_star;
    config.test.c = options->c;
    config.test.m = options->m;
    config.seed = options->seed;
    auto handle = std::make_unique<tvar_mc>();
    handle->grid = tvar::run_mc_grid(config);
    *out = handle.release();
  });
}

tvar_status tvar_mc_rate(const tvar_mc* mc, size_t model, size_t length, size_t family, size_t alpha, double* rate) {
  if (mc == nullptr) return null_argument("mc");
  if (rate == nullptr) return null_argument("rate");
  const auto& cfg = mc->grid.config;
  if (model >= cfg.models.size() || length >= cfg.lengths.size() || family >= cfg.families.size() ||
      alpha >= cfg.alphas.size())
    return set_error(TVAR_E_INVALID_ARGUMENT, "grid index out of range");
  const size_t cell = (model * cfg.lengths.size() + length) * cfg.families.size() + family;
  *rate = mc->grid.cells[cell].outcome.rates[alpha];
  return TVAR_OK;
}

tvar_status tvar_mc_to_json(const tvar_mc* mc, char** json) {
  if (mc == nullptr) return null_argument("mc");
  if (json == nullptr) return null_argument("json");
  *json = nullptr;
  return guarded([&] {
    *json = copy_string(tvar::json::dump(tvar::json::document("mc_rejection_table", tvar::json::mc_grid(mc->grid))));
  });
}

void tvar_mc_free(tvar_mc* mc) { delete mc; }

/* ---- covariance oracle ---- */

tvar_status tvar_updc_check(const char* model, double delta, size_t t_points, size_t omega_points, int truncation,
                            tvar_updc_report* out) {
  if (model == nullptr) return null_argument("model");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    tvar::require(t_points >= 2 && omega_points >= 2, tvar::ErrorCode::Config, "grids need at least two points");
    tvar::require(truncation >= 1, tvar::ErrorCode::Config, "truncation must be >= 1");
    const std::string name = model;
    const tvar::LocalAcov acov = name == "white-noise"
                                     ? tvar::white_noise_acov(1.0)
                                     : tvar::model_acov(tvar::ModelSpec::parse(name, delta, 256));
    std::vector<double> t_grid(t_points);
    std::vector<double> omega_grid(omega_points);
    for (size_t i = 0; i < t_points; ++i) t_grid[i] = static_cast<double>(i) / static_cast<double>(t_points - 1);
    for (size_t i = 0; i < omega_points; ++i)
      omega_grid[i] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) /
                                              static_cast<double>(omega_points - 1);
    const auto report = tvar::updc_check(acov, t_grid, omega_grid, truncation);
    out->kappa_min = report.kappa_min;
    out->pass = report.pass ? 1 : 0;
    out->t_at_min = report.t_at_min;
    out->omega_at_min = report.omega_at_min;
    out->truncation_bound = report.truncation_bound;
  });
}

tvar_status tvar_updc_to_json(const char* model, double delta, const tvar_updc_report* report, char** json) {
  if (model == nullptr) return null_argument("model");
  if (report == nullptr) return null_argument("report");
  if (json == nullptr) return null_argument("json");
  *json = nullptr;
  return guarded([&] {
    tvar::UpdcReport r;
    r.kappa_min = report->kappa_min;
    r.pass = report->pass != 0;
    r.t_at_min = report->t_at_min;
    r.omega_at_min = report->omega_at_min;
    r.truncation_bound = report->truncation_bound;
    tvar::json::json payload = {{"model", model}, {"delta", delta}};
    const auto fields = tvar::json::updc_report(r);
    for (const auto& [key, value] : fields.items()) payload[key] = value;
    *json = copy_string(tvar::json::dump(tvar::json::document("updc_report", std::move(payload))));
  });
}

}  // extern "C"
