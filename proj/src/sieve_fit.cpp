#include "tvar/sieve_fit.hpp"

#include "tvar/error.hpp"

#include <cmath>
#include <string>

namespace tvar {

Design build_design(std::span<const double> x, int b, const BasisSpec& spec) {
  require(b >= 1, ErrorCode::Config, "AR order b must be >= 1");
  spec.validate();
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index c = spec.c;
  const Eigen::Index p = (b + 1) * c;
  require(n > p + 1 && n > b, ErrorCode::Dimension,
          "series of length " + std::to_string(n) + " is too short for b=" + std::to_string(b) +
              ", c=" + std::to_string(c) + " (need n > (b+1)c + 1)");

  const Basis basis(spec);
  Design design;
  design.y.resize(n - b, p);
  design.response.resize(n - b);
  Eigen::VectorXd alpha(c);
  for (Eigen::Index i = b + 1; i <= n; ++i) {  // 1-based time index
    const Eigen::Index row = i - b - 1;
    basis.eval(static_cast<double>(i) / static_cast<double>(n), std::span<double>(alpha.data(), alpha.size()));
    design.y.row(row).segment(0, c) = alpha.transpose();
    for (int j = 1; j <= b; ++j)
      design.y.row(row).segment(j * c, c) = x[static_cast<std::size_t>(i - j - 1)] * alpha.transpose();
    design.response(row) = x[static_cast<std::size_t>(i - 1)];
  }
  return design;
}

SieveFit fit(std::span<const double> x, int b, const BasisSpec& spec) {
  Design design = build_design(x, b, spec);
  const Eigen::Index p = design.y.cols();
  const int c = spec.c;

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design.y);
  const double threshold = 1e-10 * design.y.norm();
  const auto r_diag = qr.matrixQR().diagonal();
  for (Eigen::Index k = 0; k < p; ++k) {
    if (!(std::abs(r_diag(k)) > threshold)) {
      const auto block = k / c;
      fail(ErrorCode::SingularDesign,
           "singular sieve design: column " + std::to_string(k) + " in block j=" + std::to_string(block) +
               (block == 0 ? " (intercept)" : " (lag " + std::to_string(block) + ")") +
               " is linearly dependent on preceding columns");
    }
  }

  SieveFit out;
  out.n = static_cast<int>(x.size());
  out.b = b;
  out.c = c;
  out.spec = spec;
  out.beta = qr.solve(design.response);
  out.sigma_hat = (design.y.transpose() * design.y) / static_cast<double>(out.n);
  const Eigen::VectorXd resid = design.response - design.y * out.beta;
  out.residuals.assign(resid.data(), resid.data() + resid.size());
  out.series.assign(x.begin(), x.end());
  return out;
}

double SieveFit::phi(int j, double t) const {
  require(j >= 0 && j <= b, ErrorCode::Domain, "coefficient index j=" + std::to_string(j) + " outside 0..b");
  return block(j).dot(Basis(spec).eval(t));
}

Eigen::VectorXd SieveFit::phi_at(double t) const {
  const Eigen::VectorXd alpha = Basis(spec).eval(t);
  Eigen::VectorXd out(b + 1);
  for (int j = 0; j <= b; ++j) out(j) = block(j).dot(alpha);
  return out;
}

double phi_hat(const SieveFit& fit, int j, double t) { return fit.phi(j, t); }

Eigen::MatrixXd h_sequence(const SieveFit& fit) {
  const int rows = fit.n - fit.b;
  Eigen::MatrixXd h(rows, fit.b + 1);
  for (int r = 0; r < rows; ++r) {
    const int i = r + fit.b + 1;  // 1-based
    const double eps = fit.residuals[static_cast<std::size_t>(r)];
    h(r, 0) = eps;
    for (int j = 1; j <= fit.b; ++j) h(r, j) = fit.series[static_cast<std::size_t>(i - j - 1)] * eps;
  }
  return h;
}

}  // namespace tvar
