#include "tvar/basis.hpp"

#include "daubechies_filters.hpp"
#include "tvar/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace tvar {

namespace {

constexpr int kMaxWaveletOrder = 10;

bool is_power_of_two(int v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

std::shared_ptr<const ScalingTable> cached_table(int order, int depth) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const ScalingTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{order, depth}];
  if (!slot) slot = std::make_shared<const ScalingTable>(daubechies_scaling_table(order, depth));
  return slot;
}

void eval_fourier(double t, std::span<double> out) {
  out[0] = 1.0;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double freq = 2.0 * std::numbers::pi * static_cast<double>((k + 1) / 2);
    out[k] = std::numbers::sqrt2 * ((k % 2 == 1) ? std::cos(freq * t) : std::sin(freq * t));
  }
}

// sqrt(2k+1) P_k(2t-1) via the three-term recurrence.
void eval_legendre(double t, std::span<double> out) {
  const double x = 2.0 * t - 1.0;
  double prev = 1.0;
  double cur = x;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = std::sqrt(3.0) * x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next = ((2.0 * kk + 1.0) * x * cur - kk * prev) / (kk + 1.0);
    prev = cur;
    cur = next;
    out[k + 1] = std::sqrt(2.0 * kk + 3.0) * next;
  }
}

// phi_{J,k}(t) = 2^{J/2} sum_l phi(2^J t + 2^J l - k)
void eval_periodized(const ScalingTable& table, int c, double t, std::span<double> out) {
  const double scale = static_cast<double>(c);
  const double amplitude = std::sqrt(scale);
  const double support = table.support();
  for (int k = 0; k < c; ++k) {
    const double u = scale * t - k;
    // smallest l with u + c*l >= 0 (points at the right edge contribute 0)
    double shifted = u - scale * std::floor(u / scale);
    double sum = 0.0;
    for (; shifted < support; shifted += scale) sum += table(shifted);
    out[static_cast<std::size_t>(k)] = amplitude * sum;
  }
}

}  // namespace

BasisSpec BasisSpec::parse(const std::string& family_name, int c) {
  BasisSpec spec;
  spec.c = c;
  if (family_name == "fourier") {
    spec.family = BasisFamily::Fourier;
  } else if (family_name == "legendre") {
    spec.family = BasisFamily::Legendre;
  } else if (family_name.starts_with("daub") && family_name.size() > 4) {
    spec.family = BasisFamily::DaubechiesPeriodized;
    try {
      std::size_t used = 0;
      spec.wavelet_order = std::stoi(family_name.substr(4), &used);
      if (used != family_name.size() - 4) throw std::invalid_argument(family_name);
    } catch (const std::exception&) {
      fail(ErrorCode::Config, "unrecognized basis family '" + family_name + "'");
    }
  } else {
    fail(ErrorCode::Config, "unrecognized basis family '" + family_name + "'");
  }
  spec.validate();
  return spec;
}

std::string BasisSpec::family_name() const {
  switch (family) {
    case BasisFamily::Fourier:
      return "fourier";
    case BasisFamily::Legendre:
      return "legendre";
    case BasisFamily::DaubechiesPeriodized:
      return "daub" + std::to_string(wavelet_order);
  }
  return "unknown";
}

int BasisSpec::resolution() const {
  int level = 0;
  while ((1 << level) < c) ++level;
  return level;
}

BasisSpec BasisSpec::with_count(int count) const {
  BasisSpec copy = *this;
  copy.c = count;
  return copy;
}

bool BasisSpec::is_valid() const noexcept {
  if (c < 1) return false;
  if (family == BasisFamily::DaubechiesPeriodized) {
    return is_power_of_two(c) && wavelet_order >= 1 && wavelet_order <= kMaxWaveletOrder;
  }
  return true;
}

void BasisSpec::validate() const {
  require(c >= 1, ErrorCode::Config, "basis size c must be >= 1");
  if (family == BasisFamily::DaubechiesPeriodized) {
    require(wavelet_order >= 1 && wavelet_order <= kMaxWaveletOrder, ErrorCode::Unsupported,
            "Daubechies order must be in 1..10, got " + std::to_string(wavelet_order));
    require(is_power_of_two(c), ErrorCode::Config,
            "wavelet basis size must be a power of two, got c=" + std::to_string(c));
  }
}

std::span<const double> daubechies_filter(int order) {
  using namespace detail;
  switch (order) {
    case 1: return kD1;
    case 2: return kD2;
    case 3: return kD3;
    case 4: return kD4;
    case 5: return kD5;
    case 6: return kD6;
    case 7: return kD7;
    case 8: return kD8;
    case 9: return kD9;
    case 10: return kD10;
    default:
      fail(ErrorCode::Unsupported, "Daubechies order must be in 1..10, got " + std::to_string(order));
  }
}

ScalingTable daubechies_scaling_table(int order, int depth) {
  const auto h = daubechies_filter(order);
  require(depth >= 0, ErrorCode::Domain, "scaling table depth must be non-negative");
  const int len = 2 * order - 1;  // support [0, len]
  const long step = 1L << depth;

  ScalingTable table;
  table.order = order;
  table.depth = depth;
  table.values.assign(static_cast<std::size_t>(len * step + 1), 0.0);

  if (order == 1) {
    // Haar: indicator of [0, 1); the right end point is the jump.
    for (long k = 0; k < step; ++k) table.values[static_cast<std::size_t>(k)] = 1.0;
    return table;
  }

  // Integer samples phi(1..len-1): eigenvector of M_{ij} = sqrt(2) h_{2i-j}
  // with eigenvalue 1, pinned by sum_k phi(k) = 1. phi(0) = phi(len) = 0.
  const int m = len - 1;
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(m + 1, m);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int idx = 2 * i - j;
      if (idx >= 0 && idx < static_cast<int>(h.size())) system(i - 1, j - 1) = std::numbers::sqrt2 * h[idx];
    }
    system(i - 1, i - 1) -= 1.0;
  }
  system.row(m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = 1.0;
  const Eigen::VectorXd integer_values = system.colPivHouseholderQr().solve(rhs);
  for (int i = 1; i <= m; ++i) table.values[static_cast<std::size_t>(i * step)] = integer_values(i - 1);

  // Refine level by level: phi(x) = sqrt(2) sum_k h_k phi(2x - k).
  for (int level = 1; level <= depth; ++level) {
    const long stride = 1L << (depth - level);  // spacing of new points in table units
    for (long idx = stride; idx < len * step; idx += 2 * stride) {
      double acc = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) {
        const long target = 2 * idx - static_cast<long>(k) * step;  // 2x - k in table units
        if (target > 0 && target < len * step) acc += h[k] * table.values[static_cast<std::size_t>(target)];
      }
      table.values[static_cast<std::size_t>(idx)] = std::numbers::sqrt2 * acc;
    }
  }
  return table;
}

double ScalingTable::operator()(double x) const noexcept {
  if (!(x >= 0.0) || x >= support()) return 0.0;
  if (order == 1) return 1.0;
  const double pos = std::ldexp(x, depth);
  const auto lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= values.size()) return values[lo];
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

Basis::Basis(const BasisSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.family == BasisFamily::DaubechiesPeriodized) table_ = cached_table(spec_.wavelet_order, kWaveletDepth);
}

void Basis::eval(double t, std::span<double> out) const {
  require(t >= 0.0 && t <= 1.0, ErrorCode::Domain, "basis argument must lie in [0, 1], got " + std::to_string(t));
  require(out.size() == static_cast<std::size_t>(spec_.c), ErrorCode::Dimension, "basis output size mismatch");
  switch (spec_.family) {
    case BasisFamily::Fourier:
      eval_fourier(t, out);
      break;
    case BasisFamily::Legendre:
      eval_legendre(t, out);
      break;
    case BasisFamily::DaubechiesPeriodized:
      eval_periodized(*table_, spec_.c, t, out);
      break;
  }
}

Eigen::VectorXd Basis::eval(double t) const {
  Eigen::VectorXd out(spec_.c);
  eval(t, std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

Eigen::VectorXd eval_basis(const BasisSpec& spec, double t) { return Basis(spec).eval(t); }

int default_grid_size(int c) noexcept { return std::max(4096, 8 * c); }

namespace {

// Gregory end weights of order 8: the trapezoid rule with its Euler-Maclaurin
// end terms replaced by one-sided differences, exact for polynomials of
// degree 7 near each end.
constexpr std::array<double, 8> kGregoryEnd = {
    1070017.0 / 3628800.0, 5537111.0 / 3628800.0, 103613.0 / 403200.0, 261115.0 / 145152.0,
    298951.0 / 725760.0,   515677.0 / 403200.0,   3349879.0 / 3628800.0, 3662753.0 / 3628800.0};

double quadrature_weight(int g, int grid_size) {
  const int edge = std::min(g, grid_size - g);
  return edge < static_cast<int>(kGregoryEnd.size()) ? kGregoryEnd[static_cast<std::size_t>(edge)] : 1.0;
}

}  // namespace

BasisMatrices basis_matrices(const BasisSpec& spec, int grid_size) {
  require(grid_size >= 4 * spec.c && grid_size >= 16, ErrorCode::Config,
          "quadrature grid must have at least max(4c, 16) intervals");
  const Basis basis(spec);
  const int c = spec.c;

  BasisMatrices mats;
  mats.gram = Eigen::MatrixXd::Zero(c, c);
  mats.bbar = Eigen::VectorXd::Zero(c);
  mats.grid.resize(static_cast<std::size_t>(grid_size) + 1);

  const double step = 1.0 / grid_size;
  Eigen::VectorXd value(c);
  for (int g = 0; g <= grid_size; ++g) {
    const double t = (g == grid_size) ? 1.0 : g * step;
    mats.grid[static_cast<std::size_t>(g)] = t;
    basis.eval(t, std::span<double>(value.data(), static_cast<std::size_t>(c)));
    const double weight = quadrature_weight(g, grid_size) * step;
    mats.bbar += weight * value;
    mats.gram.selfadjointView<Eigen::Lower>().rankUpdate(value, weight);
  }
  mats.gram = mats.gram.selfadjointView<Eigen::Lower>();
  const Eigen::MatrixXd outer = mats.bbar * mats.bbar.transpose();
  mats.w = Eigen::MatrixXd::Identity(c, c) - outer;
  mats.centered = mats.gram - outer;
  // Enforce exact symmetry of the stored forms.
  mats.w = 0.5 * (mats.w + mats.w.transpose()).eval();
  mats.centered = 0.5 * (mats.centered + mats.centered.transpose()).eval();
  return mats;
}

}  // namespace tvar
