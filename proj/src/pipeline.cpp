#include "tvar/pipeline.hpp"

#include "tvar/error.hpp"
#include "tvar/series.hpp"

#include <numeric>
#include <vector>

namespace tvar {

namespace {

std::vector<double> preprocess(std::span<const double> x, bool demean, double& mean) {
  std::vector<double> out(x.begin(), x.end());
  mean = 0.0;
  if (demean && !out.empty()) {
    mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
    for (auto& v : out) v -= mean;
  }
  return out;
}

}  // namespace

AutoTestOutcome run_test_auto(std::span<const double> x, const AutoTestOptions& options) {
  double mean = 0.0;
  const auto data = preprocess(x, options.demean, mean);
  AutoTestOutcome outcome;
  TestConfig config;
  config.b_star = options.b_star;
  config.spec = options.family.with_count(options.c > 0 ? options.c : options.family.c);
  config.m = options.m;
  config.bootstrap_draws = options.bootstrap_draws;
  config.seed = options.seed;
  config.include_intercept = options.include_intercept;

  if (options.b_star <= 0 || options.c <= 0 || options.m <= 0) {
    TuningOptions tuning;
    tuning.family = options.family;
    tuning.for_testing = true;
    if (options.b_star > 0) tuning.b_candidates = {options.b_star};
    if (options.c > 0) tuning.c_candidates = {options.c};
    if (options.m > 0) {
      tuning.select_m = false;
    }
    outcome.tuning = tune(data, tuning);
    config.b_star = outcome.tuning->b_opt;
    config.spec = options.family.with_count(outcome.tuning->c_opt);
    if (options.m <= 0) config.m = outcome.tuning->m_opt;
  }
  outcome.result = run_test(data, config);
  return outcome;
}

AutoForecastOutcome forecast_auto(std::span<const double> x, const AutoForecastOptions& options) {
  double mean = 0.0;
  const auto data = preprocess(x, options.demean, mean);
  AutoForecastOutcome outcome;
  int b = options.b;
  BasisSpec spec = options.family.with_count(options.c > 0 ? options.c : options.family.c);
  if (options.b <= 0 || options.c <= 0) {
    const int n = static_cast<int>(data.size());
    const auto b_cands = options.b > 0 ? std::vector<int>{options.b} : default_b_candidates(n);
    const auto c_cands = options.c > 0 ? std::vector<int>{options.c} : default_c_candidates(options.family.family, false);
    outcome.cv = cv_select(data, b_cands, c_cands, options.family, default_validation_length(n));
    b = outcome.cv->b_opt;
    spec = options.family.with_count(outcome.cv->c_opt);
  }
  outcome.report = forecast(data, b, spec);
  outcome.report.point += mean;
  return outcome;
}

}  // namespace tvar
