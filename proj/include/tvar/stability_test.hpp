#pragma once

#include "tvar/basis.hpp"
#include "tvar/series.hpp"
#include "tvar/sieve_fit.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace tvar {

struct TestConfig {
  int b_star = 1;
  BasisSpec spec;
  int m = 1;
  int bootstrap_draws = 1000;
  std::uint64_t seed = 0;
  bool include_intercept = false;
};

struct StabilityResult {
  double statistic = 0.0;     // n T (or n T_g)
  std::vector<double> draws;  // sorted ascending
  double p_value = 1.0;
  TestConfig config;

  /// Algorithm decision at level alpha: nT > T_(floor(B(1-alpha))).
  [[nodiscard]] bool rejects(double alpha) const;
};

/// n * sum_j beta_j^T (Gram - bbar bbar^T) beta_j over j = 1..b* (0..b* for T_g).
double t_statistic(const SieveFit& fit, const BasisMatrices& mats, int b_star, bool include_intercept);

/// Rows (sum_{j=i}^{i+m} h_j) kron B(i/n) for i = b+1..n-m, where h has rows
/// i = b+1..n. Phi = V^T R / sqrt((n-m-b+1) m) and Omega = V^T V / ((n-m-b+1) m).
class MultiplierKernel {
 public:
  MultiplierKernel(const Eigen::MatrixXd& h, const BasisSpec& spec, int m);

  [[nodiscard]] Eigen::Index multiplier_count() const noexcept { return blocks_.rows(); }
  [[nodiscard]] Eigen::Index dimension() const noexcept { return blocks_.cols(); }
  [[nodiscard]] const Eigen::MatrixXd& blocks() const noexcept { return blocks_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

  [[nodiscard]] Eigen::VectorXd phi(std::span<const double> multipliers) const;
  [[nodiscard]] Eigen::MatrixXd omega() const;

 private:
  Eigen::MatrixXd blocks_;
  double scale_ = 1.0;  // 1 / sqrt((n-m-b+1) m)
};

Eigen::VectorXd bootstrap_phi(const Eigen::MatrixXd& h, const BasisSpec& spec, int m,
                              std::span<const double> multipliers);

Eigen::MatrixXd mbar_omega_hat(const Eigen::MatrixXd& h, const BasisSpec& spec, int m);

/// Quadratic form Phi^T Sigma^{-1} S W Sigma^{-1} Phi evaluated through a
/// Cholesky factor of Sigma.
class BootstrapForm {
 public:
  BootstrapForm(const Eigen::MatrixXd& sigma_hat, const BasisMatrices& mats, int b_star, bool include_intercept);
  [[nodiscard]] double operator()(const Eigen::VectorXd& phi) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd weight_;
  int b_star_;
  int c_;
  bool include_intercept_;
};

double bootstrap_statistic(const Eigen::VectorXd& phi, const Eigen::MatrixXd& sigma_hat, const BasisMatrices& mats,
                           int b_star, int c, bool include_intercept);

/// 1 - B*/B with B* = #{draws <= statistic}; draws must be sorted.
double p_value_from_draws(double statistic, std::span<const double> sorted_draws);

/// Fit, residuals, B multiplier draws (replicate r uses Philox stream r
/// under key `seed`), p-value. Bitwise reproducible for any thread count.
StabilityResult run_test(std::span<const double> x, const TestConfig& config);

}  // namespace tvar
