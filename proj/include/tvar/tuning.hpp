#pragma once

#include "tvar/basis.hpp"

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tvar {

struct CvResult {
  int b_opt = 0;
  int c_opt = 0;
  int validation_length = 0;
  std::vector<int> b_candidates;  // sorted ascending
  std::vector<int> c_candidates;  // sorted ascending
  Eigen::MatrixXd table;          // validation MSE, +inf for failed candidates
  std::vector<std::string> failures;
};

/// Fits every (b, c) pair on x_1..x_{n-l}, forecasts x_{n-l+1}..x_n one step
/// ahead with coefficients frozen at t = 1 of the training clock and the
/// realized lags, and returns the pair with the smallest validation MSE.
CvResult cv_select(std::span<const double> x, std::span<const int> b_candidates, std::span<const int> c_candidates,
                   const BasisSpec& family, int l);

struct MvResult {
  int m_opt = 0;
  int h0 = 3;
  std::vector<std::pair<int, double>> table;  // (m_j, se(m_j)) for interior candidates
};

/// Minimum-volatility choice over precomputed Omega-hat matrices, one per
/// candidate (ascending). se uses the Frobenius norm.
MvResult mv_select_from_omegas(std::span<const Eigen::MatrixXd> omegas, std::span<const int> m_candidates, int h0 = 3);

MvResult mv_select(const Eigen::MatrixXd& h, const BasisSpec& spec, std::span<const int> m_candidates, int h0 = 3);

[[nodiscard]] int default_validation_length(int n);
[[nodiscard]] std::vector<int> default_b_candidates(int n);
/// {1, 2, 4, 8, 16}, or {1, 3, 5, 9, 17} for Fourier so every sine comes with
/// its cosine. The constant-only c = 1 is dropped for testing because the
/// centered weight vanishes identically there.
[[nodiscard]] std::vector<int> default_c_candidates(BasisFamily family, bool for_testing);
/// 1..ceil(n^{1/3}) + h0, so the interior candidates searched by minimum
/// volatility end at ceil(n^{1/3}).
[[nodiscard]] std::vector<int> default_m_candidates(int n, int b, int h0 = 3);

struct TuningOptions {
  BasisSpec family;
  std::vector<int> b_candidates;  // empty selects the defaults
  std::vector<int> c_candidates;
  std::vector<int> m_candidates;
  int validation_length = 0;  // 0 selects floor(3 log2 n)
  int h0 = 3;
  bool for_testing = true;
  bool select_m = true;
};

struct TuningResult {
  int b_opt = 0;
  int c_opt = 0;
  int m_opt = 0;
  CvResult cv;
  MvResult mv;
};

/// (b, c) by cross-validation, then m by minimum volatility on the residual
/// sequence of the full-sample fit at (b_opt, c_opt).
TuningResult tune(std::span<const double> x, const TuningOptions& options);

}  // namespace tvar
