#include "tvar/tuning.hpp"

#include "tvar/error.hpp"
#include "tvar/parallel.hpp"
#include "tvar/sieve_fit.hpp"
#include "tvar/stability_test.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tvar {

namespace {

std::vector<int> sorted_unique(std::span<const int> values) {
  std::set<int> s(values.begin(), values.end());
  return {s.begin(), s.end()};
}

}  // namespace

CvResult cv_select(std::span<const double> x, std::span<const int> b_candidates, std::span<const int> c_candidates,
                   const BasisSpec& family, int l) {
  require(!b_candidates.empty() && !c_candidates.empty(), ErrorCode::Config, "candidate lists must be non-empty");
  require(l >= 4, ErrorCode::Config, "validation length l must be >= 4");
  const int n = static_cast<int>(x.size());
  require(n - l > 2, ErrorCode::Dimension, "series too short for the validation split");

  CvResult out;
  out.validation_length = l;
  out.b_candidates = sorted_unique(b_candidates);
  out.c_candidates = sorted_unique(c_candidates);
  const auto rows = static_cast<Eigen::Index>(out.b_candidates.size());
  const auto cols = static_cast<Eigen::Index>(out.c_candidates.size());
  out.table = Eigen::MatrixXd::Constant(rows, cols, std::numeric_limits<double>::infinity());
  std::vector<std::string> errors(static_cast<std::size_t>(rows * cols));

  const auto training = x.first(static_cast<std::size_t>(n - l));
  parallel_for(errors.size(), [&](std::size_t idx) {
    const auto r = static_cast<Eigen::Index>(idx) / cols;
    const auto col = static_cast<Eigen::Index>(idx) % cols;
    const int b = out.b_candidates[static_cast<std::size_t>(r)];
    const BasisSpec spec = family.with_count(out.c_candidates[static_cast<std::size_t>(col)]);
    try {
      require(spec.is_valid(), ErrorCode::Config, "invalid basis size for " + spec.family_name());
      const SieveFit sieve = fit(training, b, spec);
      const Eigen::VectorXd coef = sieve.phi_at(1.0);
      double sse = 0.0;
      for (int k = n - l; k < n; ++k) {  // 0-based index of x_{k+1}
        double pred = coef(0);
        for (int j = 1; j <= b; ++j) pred += coef(j) * x[static_cast<std::size_t>(k - j)];
        const double err = x[static_cast<std::size_t>(k)] - pred;
        sse += err * err;
      }
      out.table(r, col) = sse / l;
    } catch (const Error& e) {
      errors[idx] = "(b=" + std::to_string(b) + ", c=" + std::to_string(spec.c) + "): " + e.what();
    }
  });
  for (auto& e : errors)
    if (!e.empty()) out.failures.push_back(std::move(e));

  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index col = 0; col < cols; ++col) {
      if (out.table(r, col) < best) {
        best = out.table(r, col);
        out.b_opt = out.b_candidates[static_cast<std::size_t>(r)];
        out.c_opt = out.c_candidates[static_cast<std::size_t>(col)];
      }
    }
  }
  require(std::isfinite(best), ErrorCode::SingularDesign, "no (b, c) candidate could be fitted");
  return out;
}

MvResult mv_select_from_omegas(std::span<const Eigen::MatrixXd> omegas, std::span<const int> m_candidates, int h0) {
  require(h0 >= 1, ErrorCode::Config, "h0 must be >= 1");
  require(omegas.size() == m_candidates.size(), ErrorCode::Dimension, "one Omega-hat per candidate required");
  const auto total = static_cast<int>(m_candidates.size());
  require(total >= 2 * h0 + 1, ErrorCode::Config,
          "minimum volatility needs at least 2*h0+1 = " + std::to_string(2 * h0 + 1) + " candidates");

  MvResult out;
  out.h0 = h0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = h0; j < total - h0; ++j) {
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(omegas[0].rows(), omegas[0].cols());
    for (int k = -h0; k <= h0; ++k) mean += omegas[static_cast<std::size_t>(j + k)];
    mean /= static_cast<double>(2 * h0 + 1);
    double acc = 0.0;
    for (int k = -h0; k <= h0; ++k) acc += (mean - omegas[static_cast<std::size_t>(j + k)]).squaredNorm();
    const double se = std::sqrt(acc / (2.0 * h0));
    out.table.emplace_back(m_candidates[static_cast<std::size_t>(j)], se);
    if (se < best) {
      best = se;
      out.m_opt = m_candidates[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

MvResult mv_select(const Eigen::MatrixXd& h, const BasisSpec& spec, std::span<const int> m_candidates, int h0) {
  const auto b = static_cast<int>(h.cols()) - 1;
  const auto n = static_cast<int>(h.rows()) + b;
  require(static_cast<int>(m_candidates.size()) >= 2 * h0 + 1, ErrorCode::Config,
          "minimum volatility needs at least 2*h0+1 = " + std::to_string(2 * h0 + 1) + " candidates");
  for (std::size_t k = 0; k < m_candidates.size(); ++k) {
    const int m = m_candidates[k];
    require(m >= 1 && m <= n - b - 2, ErrorCode::Config, "block size candidate m=" + std::to_string(m) + " infeasible");
    require(k == 0 || m > m_candidates[k - 1], ErrorCode::Config, "block size candidates must be strictly ascending");
  }
  std::vector<Eigen::MatrixXd> omegas(m_candidates.size());
  parallel_for(omegas.size(), [&](std::size_t k) { omegas[k] = mbar_omega_hat(h, spec, m_candidates[k]); });
  return mv_select_from_omegas(omegas, m_candidates, h0);
}

int default_validation_length(int n) { return static_cast<int>(std::floor(3.0 * std::log2(static_cast<double>(n)))); }

std::vector<int> default_b_candidates(int n) {
  const int top = std::max(1, static_cast<int>(std::ceil(2.0 * std::log(static_cast<double>(n)))));
  std::vector<int> out(static_cast<std::size_t>(top));
  for (int b = 1; b <= top; ++b) out[static_cast<std::size_t>(b - 1)] = b;
  return out;
}

std::vector<int> default_c_candidates(BasisFamily family, bool for_testing) {
  std::vector<int> out = family == BasisFamily::Fourier ? std::vector<int>{1, 3, 5, 9, 17}
                                                        : std::vector<int>{1, 2, 4, 8, 16};
  if (for_testing) out.erase(out.begin());
  return out;
}

std::vector<int> default_m_candidates(int n, int b, int h0) {
  const int rate = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
  const int top = std::min(std::max(rate, h0 + 1) + h0, n - b - 2);
  std::vector<int> out;
  for (int m = 1; m <= top; ++m) out.push_back(m);
  return out;
}

TuningResult tune(std::span<const double> x, const TuningOptions& options) {
  const int n = static_cast<int>(x.size());
  const auto b_cands = options.b_candidates.empty() ? default_b_candidates(n) : options.b_candidates;
  const auto c_cands = options.c_candidates.empty() ? default_c_candidates(options.family.family, options.for_testing) : options.c_candidates;
  const int l = options.validation_length > 0 ? options.validation_length : default_validation_length(n);

  TuningResult out;
  out.cv = cv_select(x, b_cands, c_cands, options.family, l);
  out.b_opt = out.cv.b_opt;
  out.c_opt = out.cv.c_opt;
  if (options.select_m) {
    const SieveFit sieve = fit(x, out.b_opt, options.family.with_count(out.c_opt));
    const auto m_cands =
        options.m_candidates.empty() ? default_m_candidates(n, out.b_opt, options.h0) : options.m_candidates;
    out.mv = mv_select(h_sequence(sieve), sieve.spec, m_cands, options.h0);
    out.m_opt = out.mv.m_opt;
  }
  return out;
}

}  // namespace tvar
