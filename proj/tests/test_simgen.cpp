#include "tvar/error.hpp"
#include "tvar/simgen.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace tvar;

namespace {

double sample_acov(const std::vector<double>& x, int lag) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double acc = 0.0;
  for (std::size_t i = static_cast<std::size_t>(lag); i < x.size(); ++i) acc += (x[i] - mean) * (x[i - lag] - mean);
  return acc / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("model 1 null lag-1 autocorrelation") {
  const int n = 8192;
  const auto x = simulate(ModelSpec::make(ModelId::TvAR2, false, 0.0, n), 2718).values;
  const double r1 = sample_acov(x, 1) / sample_acov(x, 0);
  // Bartlett variance of r1 for AR(2) with phi = (0.4, 0.4)
  std::vector<double> rho{1.0, 2.0 / 3.0};
  for (int k = 2; k < 400; ++k) rho.push_back(0.4 * rho[k - 1] + 0.4 * rho[k - 2]);
  double var = 0.0;
  for (int k = 1; k + 1 < 400; ++k) {
    const double term = rho[k + 1] + rho[k - 1] - 2.0 * rho[1] * rho[k];
    var += term * term;
  }
  const double se = std::sqrt(var / n);
  CHECK(std::abs(r1 - 2.0 / 3.0) <= 3.0 * se);
}

TEST_CASE("stationary ARMA(1,1) lag-1 autocovariance") {
  const int reps = 20;
  std::vector<double> values;
  for (int r = 0; r < reps; ++r)
    values.push_back(sample_acov(simulate(ModelSpec::make(ModelId::StatARMA11, false, 0.0, 8192), 300 + r).values, 1));
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / reps;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (reps - 1) / reps);
  CHECK(std::abs(mean - 1.25 * 1.0 / 0.75) <= 3.0 * se);
  const auto acov = model_acov(ModelSpec::make(ModelId::StatARMA11, false, 0.0, 256));
  CHECK(acov.gamma(0.5, 1) == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("alternative with zero delta is the constant model") {
  const auto spec = ModelSpec::make(ModelId::TvAR2, true, 0.0, 256);
  for (double t : {0.0, 0.25, 0.6, 1.0}) {
    CHECK(spec.a1(t) == 0.4);
    CHECK(spec.a2(t) == 0.2);
  }
  const auto alt = ModelSpec::make(ModelId::TvAR2, true, 0.35, 256);
  CHECK(alt.a2(0.25) == doctest::Approx(0.55));
  CHECK(alt.a2(0.75) == doctest::Approx(-0.15));
}

TEST_CASE("simulation is reproducible") {
  for (const char* name : {"tvar2-null", "tvma2-alt", "setar-null", "markov-alt", "bilinear-null", "arma11",
                           "setar-stat", "nslinear6", "piecewise7"}) {
    const auto spec = ModelSpec::parse(name, 0.5, 300);
    const auto a = simulate(spec, 9);
    const auto b = simulate(spec, 9);
    const auto c = simulate(spec, 10);
    CAPTURE(name);
    CHECK(a.values.size() == 300);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(spec.name() == name);
  }
}

TEST_CASE("nonlinear models stay bounded") {
  for (const char* name : {"setar-null", "setar-alt", "markov-null", "markov-alt", "bilinear-null", "bilinear-alt"}) {
    for (double delta : {0.5, 0.7}) {
      const auto x = simulate(ModelSpec::parse(name, delta, 8192), 77).values;
      const double peak = std::abs(*std::max_element(x.begin(), x.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
      }));
      CAPTURE(name);
      CHECK(peak < 50.0);
    }
  }
}

TEST_CASE("innovation choice follows the model") {
  CHECK(ModelSpec::make(ModelId::TvAR2, false, 0, 256).innovation == Innovation::StudentT5);
  CHECK(ModelSpec::make(ModelId::TvMA2, true, 0.2, 256).innovation == Innovation::StudentT5);
  CHECK(ModelSpec::make(ModelId::SETAR, false, 0, 256).innovation == Innovation::Gaussian);
  CHECK(ModelSpec::make(ModelId::TvAR2, false, 0, 256).time_varying_scale());
  CHECK_FALSE(ModelSpec::make(ModelId::StatARMA11, false, 0, 256).time_varying_scale());
}

TEST_CASE("model acov") {
  const auto acov = model_acov(ModelSpec::make(ModelId::TvMA2, false, 0.0, 256));
  // sigma(0.25) = 0.8, raw t(5) variance 5/3, MA(2) with (0.4, 0.4)
  const double s2 = 0.64 * 5.0 / 3.0;
  CHECK(acov.gamma(0.25, 0) == doctest::Approx(s2 * 1.32).epsilon(1e-10));
  CHECK(acov.gamma(0.25, 1) == doctest::Approx(s2 * 0.56).epsilon(1e-10));
  CHECK(acov.gamma(0.25, 2) == doctest::Approx(s2 * 0.4).epsilon(1e-10));
  CHECK(acov.gamma(0.25, 3) == 0.0);
  try {
    model_acov(ModelSpec::make(ModelId::SETAR, false, 0.0, 256));
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("model configuration errors") {
  CHECK_THROWS_AS(ModelSpec::parse("tvar3-null", 0.1, 256), Error);
  CHECK_THROWS_AS(ModelSpec::parse("arma11-null", 0.1, 256), Error);
  CHECK_THROWS_AS(simulate(ModelSpec::make(ModelId::TvAR2, false, 0.0, 32), 1), Error);
  auto spec = ModelSpec::make(ModelId::TvAR2, false, 0.0, 256);
  spec.burn_in = 10;
  CHECK_THROWS_AS(simulate(spec, 1), Error);
  CHECK_THROWS_AS(simulate(ModelSpec::make(ModelId::TvAR2, true, -0.1, 256), 1), Error);
}

TEST_CASE("model grid entries") {
  CHECK(split_model_entry("tvar2-alt", 0.35) == std::pair<std::string, double>{"tvar2-alt", 0.35});
  CHECK(split_model_entry("setar-alt:0.7", 0.35) == std::pair<std::string, double>{"setar-alt", 0.7});
  CHECK_THROWS_AS(split_model_entry("setar-alt:x", 0.35), Error);
  CHECK_THROWS_AS(split_model_entry(":0.5", 0.35), Error);
}

TEST_CASE("monte carlo harness") {
  AutoTestOptions test;
  test.family = {BasisFamily::Fourier, 1};
  test.b_star = 2;
  test.c = 3;
  test.m = 4;
  test.bootstrap_draws = 100;
  const auto model = ModelSpec::make(ModelId::TvAR2, false, 0.0, 128);

  SUBCASE("reps below the minimum") {
    CHECK_THROWS_AS(monte_carlo_size_power(model, test, 0, {0.1}, 1), Error);
    CHECK_THROWS_AS(monte_carlo_size_power(model, test, 49, {0.1}, 1), Error);
  }
  SUBCASE("rates are fractions of p-values") {
    const auto out = monte_carlo_size_power(model, test, 50, {0.05, 0.1}, 5);
    REQUIRE(out.p_values.size() == 50);
    CHECK(out.failures == 0);
    for (std::size_t a = 0; a < 2; ++a) {
      const auto hits = std::count_if(out.p_values.begin(), out.p_values.end(),
                                      [&](double p) { return p <= out.alphas[a]; });
      CHECK(out.rates[a] == static_cast<double>(hits) / 50.0);
    }
    CHECK(out.rates[0] <= out.rates[1]);
    const auto again = monte_carlo_size_power(model, test, 50, {0.05, 0.1}, 5);
    CHECK(again.p_values == out.p_values);
  }
}

TEST_CASE("monte carlo grid") {
  McGridConfig config;
  config.models = {"tvar2-null", "tvar2-alt:0.35"};
  config.lengths = {128};
  config.families = {"fourier", "legendre"};
  config.reps = 50;
  config.test.b_star = 1;
  config.test.c = 2;
  config.test.m = 3;
  config.test.bootstrap_draws = 100;
  const auto grid = run_mc_grid(config);
  REQUIRE(grid.cells.size() == 4);
  CHECK(grid.cells[0].model == "tvar2-null");
  CHECK(grid.cells[1].family == "legendre");
  CHECK(grid.cells[2].model == "tvar2-alt");
  CHECK(grid.cells[2].delta == 0.35);
  const auto again = run_mc_grid(config);
  for (std::size_t k = 0; k < 4; ++k) CHECK(again.cells[k].outcome.p_values == grid.cells[k].outcome.p_values);

  const auto full = full_table_config(1);
  CHECK(full.models.size() == 15);
  CHECK(full.lengths == std::vector<int>{256, 512});
  CHECK(full.reps == 1000);
  CHECK(full.test.bootstrap_draws == 1000);
}
