#include "tvar/error.hpp"
#include "tvar/forecast.hpp"
#include "tvar/pipeline.hpp"
#include "tvar/rng.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

using namespace tvar;

namespace {

const BasisSpec kConstant{BasisFamily::Fourier, 1};

double mean_square(const std::vector<double>& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("noiseless recursion is forecast exactly") {
  std::vector<double> x{1.0};
  for (int i = 1; i < 40; ++i) x.push_back(0.5 * x.back());
  const auto report = forecast(x, 1, kConstant);
  CHECK(std::abs(report.point - 0.5 * x.back()) <= 1e-8);
  CHECK(std::abs(report.phi_at_one(1) - 0.5) <= 1e-8);
}

TEST_CASE("white noise forecast is the mean") {
  const int n = 8192;
  const auto x = testing::white_noise(n, 77, 3.0);
  const auto report = forecast(x, 1, kConstant);
  CHECK(std::abs(report.point - 3.0) <= 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("stationary AR(2) out-of-sample error") {
  const int n = 8192;
  const int held = 500;
  const auto path = testing::simulate_ar(n + held, {0.5, -0.25}, 2024);
  const std::vector<double> train(path.begin(), path.begin() + n);
  const auto f = fit(train, 2, kConstant);
  double sse = 0.0;
  for (int k = 0; k < held; ++k) {
    const std::span<const double> lags(path.data(), static_cast<std::size_t>(n + k));
    const double e = path[static_cast<std::size_t>(n + k)] - forecast_one_step(f, lags);
    sse += e * e;
  }
  CHECK(std::abs(sse / held - 1.0) <= 0.2);
}

TEST_CASE("forecast is linear in the lags") {
  const auto x = testing::simulate_ar(300, {0.3, 0.2}, 4);
  const auto f = fit(x, 2, {BasisFamily::Legendre, 3});
  const auto coef = f.phi_at(1.0);
  std::vector<double> a{0.0, 1.0, -2.0};
  std::vector<double> b{5.0, 0.5, 4.0};
  std::vector<double> s{5.0, 1.5, 2.0};
  const double fa = forecast_one_step(f, a) - coef(0);
  const double fb = forecast_one_step(f, b) - coef(0);
  const double fs = forecast_one_step(f, s) - coef(0);
  CHECK(fs == doctest::Approx(fa + fb));
  CHECK_THROWS_AS(forecast_one_step(f, std::vector<double>{1.0}), Error);
}

TEST_CASE("mse estimate with the constant basis") {
  const auto x = testing::simulate_ar(1000, {0.6}, 8);
  const auto f = fit(x, 1, kConstant);
  const auto mse = estimate_mse(f, kConstant);
  CHECK(std::abs(mse.value - mean_square(f.residuals)) <= 1e-12);
  CHECK_FALSE(mse.floored);
}

TEST_CASE("mse estimate under time-varying scale") {
  const int n = 8192;
  Sampler sampler(555, 0);
  std::vector<double> x(n);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double sigma = 0.4 + 0.4 * std::abs(std::sin(2.0 * std::numbers::pi * t));
    x[static_cast<std::size_t>(i - 1)] = sigma * sampler.normal();
  }
  const BasisSpec spec{BasisFamily::Fourier, 8};
  const auto report = forecast(x, 1, spec);
  CHECK(std::abs(report.mse.value - 0.16) <= 0.25 * 0.16);
}

TEST_CASE("mse floor") {
  SieveFit f;
  f.n = 50;
  f.b = 1;
  f.c = 1;
  f.spec = kConstant;
  f.residuals.assign(49, 0.0);
  const auto mse = estimate_mse(f, kConstant);
  CHECK(mse.value == 1e-12);
  CHECK(mse.floored);

  f.residuals.clear();
  CHECK_THROWS_AS(estimate_mse(f, kConstant), Error);
}

TEST_CASE("mse is invariant to a sign flip") {
  auto x = testing::simulate_ar(800, {0.4}, 31);
  const BasisSpec spec{BasisFamily::Fourier, 5};
  const auto a = forecast(x, 2, spec);
  for (auto& v : x) v = -v;
  const auto b = forecast(x, 2, spec);
  CHECK(b.mse.value == doctest::Approx(a.mse.value).epsilon(1e-10));
  CHECK(b.point == doctest::Approx(-a.point).epsilon(1e-10));
}

TEST_CASE("forecast with demeaning") {
  const auto x = testing::simulate_ar(600, {0.5}, 12, 10.0);
  AutoForecastOptions options;
  options.family = {BasisFamily::Fourier, 1};
  options.b = 1;
  options.c = 3;
  options.demean = true;
  const auto out = forecast_auto(x, options);
  CHECK_FALSE(out.cv.has_value());

  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> centered(x);
  for (auto& v : centered) v -= mean;
  const auto direct = forecast(centered, 1, {BasisFamily::Fourier, 3});
  CHECK(out.report.point == doctest::Approx(direct.point + mean).epsilon(1e-12));
  CHECK(out.report.mse.value == doctest::Approx(direct.mse.value).epsilon(1e-12));
}

TEST_CASE("forecast with tuned order") {
  const auto x = testing::simulate_ar(1024, {0.5, -0.25}, 90);
  AutoForecastOptions options;
  options.family = {BasisFamily::Legendre, 1};
  const auto out = forecast_auto(x, options);
  REQUIRE(out.cv.has_value());
  CHECK(out.report.b == out.cv->b_opt);
  CHECK(out.report.spec.c == out.cv->c_opt);
  CHECK(std::isfinite(out.report.point));
}
