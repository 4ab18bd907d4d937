#include "tvar/error.hpp"
#include "tvar/parallel.hpp"
#include "tvar/rng.hpp"
#include "tvar/stability_test.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace tvar;

namespace {

SieveFit synthetic_fit(const BasisSpec& spec, int b, const std::vector<Eigen::VectorXd>& blocks) {
  SieveFit f;
  f.n = 1;
  f.b = b;
  f.c = spec.c;
  f.spec = spec;
  f.beta.resize((b + 1) * spec.c);
  for (int j = 0; j <= b; ++j) f.beta.segment(j * spec.c, spec.c) = blocks[static_cast<std::size_t>(j)];
  return f;
}

Eigen::VectorXd unit(int c, int k) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(c);
  v(k) = 1.0;
  return v;
}

Eigen::MatrixXd hand_h(int rows, int cols, double shift) {
  Eigen::MatrixXd h(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) h(r, c) = std::sin(1.3 * r + 0.7 * c + shift) + 0.1 * c;
  return h;
}

}  // namespace

TEST_CASE("t statistic closed forms") {
  SUBCASE("constant basis gives zero") {
    const BasisSpec spec{BasisFamily::Fourier, 1};
    auto f = synthetic_fit(spec, 1, {Eigen::VectorXd::Constant(1, 0.3), Eigen::VectorXd::Constant(1, 0.8)});
    f.n = 500;
    CHECK(t_statistic(f, basis_matrices(spec), 1, false) == 0.0);
  }
  SUBCASE("loading only on the constant function") {
    const BasisSpec spec{BasisFamily::Fourier, 5};
    auto f = synthetic_fit(spec, 2, {0.4 * unit(5, 0), -1.2 * unit(5, 0), 0.7 * unit(5, 0)});
    f.n = 1000;
    CHECK(std::abs(t_statistic(f, basis_matrices(spec), 2, true)) <= 1e-12);
  }
  SUBCASE("pure sqrt2 cos component") {
    const BasisSpec spec{BasisFamily::Fourier, 3};
    const auto f = synthetic_fit(spec, 1, {Eigen::VectorXd::Zero(3), unit(3, 1)});
    CHECK(std::abs(t_statistic(f, basis_matrices(spec), 1, false) - 1.0) <= 1e-6);
    // direct quadrature of (sqrt2 cos 2 pi t)^2
    double direct = 0.0;
    for (int g = 0; g < 10000; ++g) {
      const double v = f.phi(1, (g + 0.5) / 10000.0);
      direct += v * v / 10000.0;
    }
    CHECK(std::abs(direct - 1.0) <= 1e-6);
  }
  SUBCASE("intercept block only counts for T_g") {
    const BasisSpec spec{BasisFamily::Legendre, 3};
    const auto f = synthetic_fit(spec, 1, {unit(3, 2), Eigen::VectorXd::Zero(3)});
    const auto mats = basis_matrices(spec);
    CHECK(t_statistic(f, mats, 1, false) == 0.0);
    CHECK(std::abs(t_statistic(f, mats, 1, true) - 1.0) <= 1e-6);
  }
}

TEST_CASE("bootstrap phi") {
  const BasisSpec spec{BasisFamily::Fourier, 3};
  const int m = 3;
  const Eigen::MatrixXd h = hand_h(19, 2, 0.0);  // n = 20, b = 1
  const MultiplierKernel kernel(h, spec, m);
  REQUIRE(kernel.multiplier_count() == 20 - m - 1);
  REQUIRE(kernel.dimension() == 6);

  SUBCASE("zero multipliers") {
    const std::vector<double> r(16, 0.0);
    CHECK(kernel.phi(r).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("zero h") {
    std::vector<double> r(16);
    Sampler s(1, 0);
    for (auto& v : r) v = s.normal();
    CHECK(bootstrap_phi(Eigen::MatrixXd::Zero(19, 2), spec, m, r).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single nonzero multiplier") {
    const int n = 20;
    const int b = 1;
    for (int i0 : {2, 9, 16}) {  // 1-based time index of the multiplier
      std::vector<double> r(16, 0.0);
      r[static_cast<std::size_t>(i0 - b - 1)] = 1.0;
      Eigen::VectorXd expected(6);
      const auto alpha = eval_basis(spec, static_cast<double>(i0) / n);
      for (int j = 0; j <= b; ++j) {
        double window = 0.0;
        for (int k = i0; k <= i0 + m; ++k) window += h(k - b - 1, j);
        expected.segment(j * 3, 3) = window * alpha;
      }
      expected /= std::sqrt(static_cast<double>((n - m - b + 1) * m));
      CHECK((kernel.phi(r) - expected).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
  SUBCASE("wrong multiplier count") { CHECK_THROWS_AS(kernel.phi(std::vector<double>(15, 0.0)), Error); }
}

TEST_CASE("omega hat") {
  const BasisSpec spec{BasisFamily::Fourier, 1};
  CHECK(mbar_omega_hat(Eigen::MatrixXd::Zero(30, 3), {BasisFamily::Legendre, 2}, 4).cwiseAbs().maxCoeff() == 0.0);

  // n = 4, b = 1, m = 1: h rows for i = 2, 3, 4; multipliers for i = 2, 3
  Eigen::MatrixXd h(3, 2);
  h << 1.0, 2.0, -0.5, 0.25, 3.0, -1.0;
  Eigen::Vector2d w2 = (h.row(0) + h.row(1)).transpose();
  Eigen::Vector2d w3 = (h.row(1) + h.row(2)).transpose();
  const Eigen::Matrix2d expected = (w2 * w2.transpose() + w3 * w3.transpose()) / 3.0;
  CHECK((mbar_omega_hat(h, spec, 1) - expected).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK_THROWS_AS(mbar_omega_hat(h, spec, 3), Error);
  CHECK_THROWS_AS(mbar_omega_hat(h, spec, 0), Error);
}

TEST_CASE("omega hat is the conditional covariance of phi") {
  const BasisSpec spec{BasisFamily::Fourier, 3};
  const Eigen::MatrixXd h = hand_h(199, 2, 0.3);
  const MultiplierKernel kernel(h, spec, 4);
  const auto omega = kernel.omega();
  const Eigen::MatrixXd v = kernel.blocks() * kernel.scale();
  CHECK((omega - v.transpose() * v).cwiseAbs().maxCoeff() <= 1e-12);

  const int draws = 4000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(6, 6);
  std::vector<double> r(static_cast<std::size_t>(kernel.multiplier_count()));
  for (int d = 0; d < draws; ++d) {
    Sampler s(99, static_cast<std::uint64_t>(d));
    for (auto& x : r) x = s.normal();
    const auto phi = kernel.phi(r);
    acc += phi * phi.transpose();
  }
  acc /= draws;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double se = std::sqrt((omega(i, i) * omega(j, j) + omega(i, j) * omega(i, j)) / draws);
      CHECK(std::abs(acc(i, j) - omega(i, j)) <= 5.0 * se);
    }
}

TEST_CASE("bootstrap statistic closed forms") {
  const BasisSpec spec{BasisFamily::Fourier, 3};
  const auto mats = basis_matrices(spec);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(6, 6);
  CHECK(bootstrap_statistic(Eigen::VectorXd::Zero(6), identity, mats, 1, 3, false) == 0.0);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(6);
  phi.head(3) << 0.3, 1.0, -2.0;
  CHECK(bootstrap_statistic(phi, identity, mats, 1, 3, false) == 0.0);
  phi.setZero();
  phi(4) = 1.0;
  CHECK(std::abs(bootstrap_statistic(phi, identity, mats, 1, 3, false) - 1.0) <= 1e-6);
  // Sigma = 2 I halves v and quarters the form
  CHECK(std::abs(bootstrap_statistic(phi, 2.0 * identity, mats, 1, 3, false) - 0.25) <= 1e-6);
  CHECK_THROWS_AS(bootstrap_statistic(phi, Eigen::MatrixXd::Zero(6, 6), mats, 1, 3, false), Error);
}

TEST_CASE("p-value from sorted draws") {
  const std::vector<double> draws{1.0, 2.0, 3.0, 4.0};
  CHECK(p_value_from_draws(0.5, draws) == 1.0);
  CHECK(p_value_from_draws(9.0, draws) == 0.0);
  CHECK(p_value_from_draws(2.0, draws) == 0.5);  // ties count toward B*
  CHECK(p_value_from_draws(2.5, draws) == 0.5);
  double previous = 1.0;
  for (double s = 0.0; s <= 5.0; s += 0.125) {
    const double p = p_value_from_draws(s, draws);
    CHECK(p <= previous);
    previous = p;
  }
}

TEST_CASE("rejection rule") {
  StabilityResult r;
  for (int i = 1; i <= 100; ++i) r.draws.push_back(i);
  r.statistic = 90.0;
  CHECK_FALSE(r.rejects(0.1));  // T_(90) = 90, strict inequality
  r.statistic = 90.5;
  CHECK(r.rejects(0.1));
  CHECK_FALSE(r.rejects(0.05));
}

TEST_CASE("run_test") {
  const auto x = testing::simulate_ar(512, {0.4, 0.4}, 7);
  TestConfig config;
  config.b_star = 2;
  config.spec = {BasisFamily::Fourier, 3};
  config.m = 5;
  config.bootstrap_draws = 300;
  config.seed = 123;

  SUBCASE("statistic and draws are non-negative and sorted") {
    const auto r = run_test(x, config);
    CHECK(r.statistic >= 0.0);
    CHECK(r.draws.size() == 300);
    CHECK(std::is_sorted(r.draws.begin(), r.draws.end()));
    CHECK(r.draws.front() >= 0.0);
    CHECK(r.p_value == p_value_from_draws(r.statistic, r.draws));
    const auto f = fit(x, 2, config.spec);
    CHECK(r.statistic == t_statistic(f, basis_matrices(config.spec), 2, false));
  }
  SUBCASE("thread count does not change the result") {
    set_thread_count(1);
    const auto serial = run_test(x, config);
    set_thread_count(8);
    const auto parallel = run_test(x, config);
    set_thread_count(0);
    CHECK(serial.draws == parallel.draws);
    CHECK(serial.statistic == parallel.statistic);
    CHECK(serial.p_value == parallel.p_value);
  }
  SUBCASE("seed changes the draws") {
    auto other = config;
    other.seed = 124;
    CHECK(run_test(x, config).draws != run_test(x, other).draws);
  }
  SUBCASE("scale invariance") {
    std::vector<double> scaled(x);
    for (auto& v : scaled) v *= 2.5;
    const auto a = run_test(x, config);
    const auto b = run_test(scaled, config);
    CHECK(b.statistic == doctest::Approx(a.statistic).epsilon(1e-8));
    for (std::size_t k = 0; k < a.draws.size(); k += 37) CHECK(b.draws[k] == doctest::Approx(a.draws[k]).epsilon(1e-8));
  }
  SUBCASE("too few draws") {
    config.bootstrap_draws = 50;
    CHECK_THROWS_AS(run_test(x, config), Error);
  }
}
