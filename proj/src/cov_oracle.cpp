#include "tvar/cov_oracle.hpp"

#include "tvar/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace tvar {

YwSolution yule_walker(const LocalAcov& acov, double t, int b) {
  require(b >= 1, ErrorCode::Config, "Yule-Walker order must be >= 1");
  std::vector<double> gamma(static_cast<std::size_t>(b) + 1);
  for (int j = 0; j <= b; ++j) gamma[static_cast<std::size_t>(j)] = acov.gamma(t, j);
  require(gamma[0] > 0.0, ErrorCode::UpdcViolation, "gamma(t, 0) must be positive");

  Eigen::MatrixXd toeplitz(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) toeplitz(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))];
  const Eigen::Map<const Eigen::VectorXd> rhs(gamma.data() + 1, b);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(toeplitz, Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues().minCoeff();
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (lambda_min <= 1e-12 * gamma[0]) {
    fail(ErrorCode::UpdcViolation, "Gamma(t) is not positive definite at t=" + std::to_string(t) +
                                       " (smallest eigenvalue " + std::to_string(lambda_min) + ")");
  }

  const Eigen::LLT<Eigen::MatrixXd> llt(toeplitz);
  YwSolution out;
  out.t = t;
  out.b = b;
  out.phi = llt.solve(rhs);
  out.phi0 = acov.mu(t) * (1.0 - out.phi.sum());
  out.cond = lambda_max / lambda_min;
  return out;
}

double tail_sum_bound(int truncation, double tau) {
  if (tau <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(static_cast<double>(std::max(truncation, 1)), 1.0 - tau) / (tau - 1.0);
}

SpectralValue local_spectral_density(const LocalAcov& acov, double t, double omega, int truncation) {
  require(truncation >= 1, ErrorCode::Config, "spectral truncation lag must be >= 1");
  double value = acov.gamma(t, 0);
  for (int j = 1; j <= truncation; ++j) value += 2.0 * acov.gamma(t, j) * std::cos(j * omega);
  return {value, 2.0 * acov.tail_c * tail_sum_bound(truncation, acov.tail_tau)};
}

UpdcReport updc_check(const LocalAcov& acov, std::span<const double> t_grid, std::span<const double> omega_grid,
                      int truncation) {
  require(!t_grid.empty() && !omega_grid.empty(), ErrorCode::Config, "UPDC grids must be non-empty");
  require(truncation >= 1, ErrorCode::Config, "spectral truncation lag must be >= 1");
  UpdcReport report;
  report.kappa_min = std::numeric_limits<double>::infinity();
  std::vector<double> gamma(static_cast<std::size_t>(truncation) + 1);
  for (const double t : t_grid) {
    for (int j = 0; j <= truncation; ++j) gamma[static_cast<std::size_t>(j)] = acov.gamma(t, j);
    for (const double omega : omega_grid) {
      double value = gamma[0];
      for (int j = 1; j <= truncation; ++j) value += 2.0 * gamma[static_cast<std::size_t>(j)] * std::cos(j * omega);
      if (value < report.kappa_min) {
        report.kappa_min = value;
        report.t_at_min = t;
        report.omega_at_min = omega;
      }
    }
  }
  report.pass = report.kappa_min > 0.0;
  report.truncation_bound = 2.0 * acov.tail_c * tail_sum_bound(truncation, acov.tail_tau);
  return report;
}

std::vector<DecayEntry> coefficient_decay_report(const LocalAcov& acov, double t, int b) {
  const YwSolution sol = yule_walker(acov, t, b);
  std::vector<DecayEntry> out;
  out.reserve(static_cast<std::size_t>(b));
  for (int j = 1; j <= b; ++j) {
    const double jj = static_cast<double>(j);
    out.push_back({j, std::abs(sol.phi(j - 1)), std::pow((std::log(jj) + 1.0) / jj, acov.tail_tau - 1.0)});
  }
  return out;
}

namespace {

std::vector<double> psi_weights(const std::vector<double>& ar, const std::vector<double>& ma, int terms) {
  std::vector<double> psi(static_cast<std::size_t>(terms), 0.0);
  psi[0] = 1.0;
  for (int k = 1; k < terms; ++k) {
    double v = (k <= static_cast<int>(ma.size())) ? ma[static_cast<std::size_t>(k - 1)] : 0.0;
    for (std::size_t j = 1; j <= ar.size() && static_cast<int>(j) <= k; ++j)
      v += ar[j - 1] * psi[static_cast<std::size_t>(k) - j];
    psi[static_cast<std::size_t>(k)] = v;
  }
  return psi;
}

}  // namespace

LocalAcov local_arma_acov(std::function<std::vector<double>(double)> ar, std::function<std::vector<double>(double)> ma,
                          std::function<double(double)> sigma, double eta_variance, int psi_terms, double tail_tau) {
  LocalAcov acov;
  acov.gamma = [ar = std::move(ar), ma = std::move(ma), sigma = std::move(sigma), eta_variance, psi_terms](double t,
                                                                                                         int j) {
    const auto psi = psi_weights(ar(t), ma(t), psi_terms);
    double acc = 0.0;
    for (int k = 0; k + j < psi_terms; ++k) acc += psi[static_cast<std::size_t>(k)] * psi[static_cast<std::size_t>(k + j)];
    const double s = sigma(t);
    return s * s * eta_variance * acc;
  };
  acov.tail_tau = tail_tau;
  double c = 0.0;
  for (int g = 0; g <= 8; ++g) {
    const double t = g / 8.0;
    for (int j = 1; j <= 200; ++j) c = std::max(c, std::abs(acov.gamma(t, j)) * std::pow(j, tail_tau));
  }
  acov.tail_c = c;
  return acov;
}

LocalAcov white_noise_acov(double variance) {
  LocalAcov acov;
  acov.gamma = [variance](double, int j) { return j == 0 ? variance : 0.0; };
  acov.tail_c = 0.0;
  acov.tail_tau = 2.0;
  return acov;
}

}  // namespace tvar
