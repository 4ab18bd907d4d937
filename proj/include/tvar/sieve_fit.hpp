#pragma once

#include "tvar/basis.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace tvar {

struct Design {
  Eigen::MatrixXd y;         // (n-b) x (b+1)c, rows i = b+1..n
  Eigen::VectorXd response;  // x_{b+1}..x_n
};

/// Row i holds (alpha_k(i/n))_k followed by alpha_k(i/n) x_{i-j} for
/// j = 1..b, i.e. (1, x_{i-1}, ..., x_{i-b}) kron B(i/n).
Design build_design(std::span<const double> x, int b, const BasisSpec& spec);

/// Result of the single sieve OLS regression.
struct SieveFit {
  int n = 0;
  int b = 0;
  int c = 0;
  BasisSpec spec;
  Eigen::VectorXd beta;       // blocks j = 0..b, each of length c
  Eigen::MatrixXd sigma_hat;  // Y^T Y / n
  std::vector<double> residuals;  // eps_i for i = b+1..n
  std::vector<double> series;     // the fitted observations

  /// phi_j(t) = <block j of beta, B(t)>.
  [[nodiscard]] double phi(int j, double t) const;
  [[nodiscard]] Eigen::VectorXd phi_at(double t) const;  // (phi_0(t)..phi_b(t))
  [[nodiscard]] auto block(int j) const { return beta.segment(static_cast<Eigen::Index>(j) * c, c); }
};

/// Householder-QR least squares. Throws SingularDesign when a diagonal entry
/// of R falls below 1e-10 * ||Y||_F, naming the lag block of that column.
SieveFit fit(std::span<const double> x, int b, const BasisSpec& spec);

double phi_hat(const SieveFit& fit, int j, double t);

/// Rows h_i = (1, x_{i-1}, ..., x_{i-b}) * eps_i for i = b+1..n.
Eigen::MatrixXd h_sequence(const SieveFit& fit);

}  // namespace tvar
