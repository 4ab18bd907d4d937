#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace tvar {

/// Local autocovariance gamma(t, j) (j >= 0) and trend mu(t) of a locally
/// stationary process, with a declared polynomial tail bound
/// |gamma(t, j)| <= tail_c * j^{-tail_tau}. Callables must be reentrant.
struct LocalAcov {
  std::function<double(double, int)> gamma;
  std::function<double(double)> mu = [](double) { return 0.0; };
  double tail_c = 0.0;
  double tail_tau = 2.0;
};

struct YwSolution {
  double t = 0.0;
  int b = 0;
  Eigen::VectorXd phi;  // phi_1(t)..phi_b(t)
  double phi0 = 0.0;
  double cond = 1.0;  // spectral condition number of Gamma(t)
};

/// Solves Gamma(t) phi = gamma(t) for the b x b Toeplitz matrix
/// Gamma_{ij}(t) = gamma(t, |i-j|). Throws UpdcViolation when the smallest
/// eigenvalue is <= 1e-12 * gamma(t, 0).
YwSolution yule_walker(const LocalAcov& acov, double t, int b);

struct SpectralValue {
  double value = 0.0;
  double truncation_bound = 0.0;  // 2 C sum_{j>J} j^{-tau}
};

/// gamma(t,0) + 2 sum_{j=1}^J gamma(t,j) cos(j omega).
SpectralValue local_spectral_density(const LocalAcov& acov, double t, double omega, int truncation);

struct UpdcReport {
  double kappa_min = 0.0;
  bool pass = false;
  double t_at_min = 0.0;
  double omega_at_min = 0.0;
  double truncation_bound = 0.0;
};

UpdcReport updc_check(const LocalAcov& acov, std::span<const double> t_grid, std::span<const double> omega_grid,
                      int truncation);

struct DecayEntry {
  int lag = 0;
  double abs_phi = 0.0;
  double envelope = 0.0;  // ((log j + 1) / j)^{tau - 1}
};

std::vector<DecayEntry> coefficient_decay_report(const LocalAcov& acov, double t, int b);

/// sum_{j>J} j^{-tau} bounded by the tail integral J^{1-tau} / (tau - 1);
/// infinite when tau <= 1.
double tail_sum_bound(int truncation, double tau);

/// gamma(t, j) of the local linear process x = a(t,B)^{-1} m(t,B) sigma(t) eta
/// with ar(t) = (a_1..a_p), ma(t) = (m_1..m_q) and innovation variance
/// sigma(t)^2 * eta_variance, via the MA(infinity) weights truncated at
/// psi_terms. The tail constant is fitted numerically for tau = tail_tau.
LocalAcov local_arma_acov(std::function<std::vector<double>(double)> ar, std::function<std::vector<double>(double)> ma,
                          std::function<double(double)> sigma, double eta_variance, int psi_terms = 4000,
                          double tail_tau = 3.0);

LocalAcov white_noise_acov(double variance = 1.0);

}  // namespace tvar
