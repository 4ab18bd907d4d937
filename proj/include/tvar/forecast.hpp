#pragma once

#include "tvar/basis.hpp"
#include "tvar/sieve_fit.hpp"

#include <Eigen/Dense>

#include <span>

namespace tvar {

/// phi_0(1) + sum_j phi_j(1) x_{n+1-j}, with the lags taken from the tail of x.
double forecast_one_step(const SieveFit& fit, std::span<const double> x);

struct MseEstimate {
  double value = 0.0;  // max(raw, floor)
  double raw = 0.0;    // sum_k b_k alpha_k(1)
  double floor = 0.0;
  bool floored = false;
  double residual_norm = 0.0;  // ||eps^2 - fitted|| of the variance regression
};

/// Sieve OLS of squared residuals on B(i/n), evaluated at t = 1 and floored
/// at max(1e-12, 0.01 * mean(eps^2)).
MseEstimate estimate_mse(const SieveFit& fit, const BasisSpec& spec);

struct ForecastReport {
  double point = 0.0;
  MseEstimate mse;
  Eigen::VectorXd phi_at_one;  // phi_0(1)..phi_b(1)
  int b = 0;
  BasisSpec spec;
};

ForecastReport forecast(std::span<const double> x, int b, const BasisSpec& spec);

}  // namespace tvar
