#include "tvar/forecast.hpp"

#include "tvar/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tvar {

double forecast_one_step(const SieveFit& fit, std::span<const double> x) {
  require(static_cast<int>(x.size()) >= fit.b, ErrorCode::Dimension, "series shorter than the AR order");
  const Eigen::VectorXd coef = fit.phi_at(1.0);
  double out = coef(0);
  const std::size_t n = x.size();
  for (int j = 1; j <= fit.b; ++j) out += coef(j) * x[n - static_cast<std::size_t>(j)];
  return out;
}

MseEstimate estimate_mse(const SieveFit& fit, const BasisSpec& spec) {
  require(!fit.residuals.empty(), ErrorCode::Dimension, "fit has no residuals");
  const auto rows = static_cast<Eigen::Index>(fit.residuals.size());
  require(rows > spec.c, ErrorCode::Dimension, "too few residuals for the variance regression");
  const Basis basis(spec);

  Eigen::MatrixXd design(rows, spec.c);
  Eigen::VectorXd squared(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = static_cast<double>(r + fit.b + 1) / static_cast<double>(fit.n);
    design.row(r) = basis.eval(t).transpose();
    const double e = fit.residuals[static_cast<std::size_t>(r)];
    squared(r) = e * e;
  }

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
  const double threshold = 1e-10 * design.norm();
  const auto diag = qr.matrixQR().diagonal();
  for (Eigen::Index k = 0; k < diag.size(); ++k)
    require(std::abs(diag(k)) > threshold, ErrorCode::SingularDesign,
            "singular variance design at basis column " + std::to_string(k));
  const Eigen::VectorXd coef = qr.solve(squared);

  MseEstimate out;
  out.raw = coef.dot(basis.eval(1.0));
  out.floor = std::max(1e-12, 0.01 * squared.mean());
  out.floored = !(out.raw >= out.floor);
  out.value = out.floored ? out.floor : out.raw;
  out.residual_norm = (squared - design * coef).norm();
  return out;
}

ForecastReport forecast(std::span<const double> x, int b, const BasisSpec& spec) {
  const SieveFit sieve = fit(x, b, spec);
  ForecastReport report;
  report.point = forecast_one_step(sieve, x);
  report.mse = estimate_mse(sieve, spec);
  report.phi_at_one = sieve.phi_at(1.0);
  report.b = b;
  report.spec = spec;
  return report;
}

}  // namespace tvar
