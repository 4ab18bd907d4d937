#pragma once

#include "tvar/basis.hpp"
#include "tvar/forecast.hpp"
#include "tvar/stability_test.hpp"
#include "tvar/tuning.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace tvar {

/// Stability test where any of b*, c, m left at 0 is chosen by tune().
struct AutoTestOptions {
  BasisSpec family;  // c is ignored when c == 0 below
  int b_star = 0;
  int c = 0;
  int m = 0;
  int bootstrap_draws = 1000;
  std::uint64_t seed = 0;
  bool include_intercept = false;
  bool demean = false;
};

struct AutoTestOutcome {
  StabilityResult result;
  std::optional<TuningResult> tuning;
};

AutoTestOutcome run_test_auto(std::span<const double> x, const AutoTestOptions& options);

struct AutoForecastOptions {
  BasisSpec family;
  int b = 0;
  int c = 0;
  bool demean = false;
};

struct AutoForecastOutcome {
  ForecastReport report;
  std::optional<CvResult> cv;
};

/// With demean, the sample mean is removed before fitting and added back to
/// the point forecast.
AutoForecastOutcome forecast_auto(std::span<const double> x, const AutoForecastOptions& options);

}  // namespace tvar
