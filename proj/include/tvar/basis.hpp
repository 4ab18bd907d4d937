#pragma once

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tvar {

enum class BasisFamily { Fourier, Legendre, DaubechiesPeriodized };

/// A sieve basis family plus the number of functions c. For the wavelet
/// family c must equal 2^J (the resolution level).
struct BasisSpec {
  BasisFamily family = BasisFamily::Fourier;
  int c = 1;
  int wavelet_order = 9;

  /// Parses "fourier", "legendre" or "daub<N>".
  static BasisSpec parse(const std::string& family_name, int c);

  [[nodiscard]] std::string family_name() const;
  [[nodiscard]] int resolution() const;
  [[nodiscard]] BasisSpec with_count(int count) const;
  /// Throws Config when the invariants do not hold.
  void validate() const;
  [[nodiscard]] bool is_valid() const noexcept;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// Dyadic samples of the Daubechies scaling function on [0, 2N-1].
struct ScalingTable {
  int order = 0;
  int depth = 0;
  std::vector<double> values;  // values[k] = phi(k / 2^depth)

  [[nodiscard]] double support() const noexcept { return 2.0 * order - 1.0; }
  /// Linear interpolation; zero outside the support.
  [[nodiscard]] double operator()(double x) const noexcept;
};

/// Orthonormal Daubechies D-N lowpass filter h_0..h_{2N-1}, sum = sqrt(2).
std::span<const double> daubechies_filter(int order);

/// Scaling-function values on k / 2^depth, k = 0..(2N-1)*2^depth, from the
/// eigenvector of integer samples refined through the two-scale relation.
ScalingTable daubechies_scaling_table(int order, int depth);

/// Evaluates basis vectors B(t). Cheap to copy; wavelet tables are shared.
class Basis {
 public:
  static constexpr int kWaveletDepth = 12;

  explicit Basis(const BasisSpec& spec);

  [[nodiscard]] const BasisSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] int size() const noexcept { return spec_.c; }

  void eval(double t, std::span<double> out) const;
  [[nodiscard]] Eigen::VectorXd eval(double t) const;

 private:
  BasisSpec spec_;
  std::shared_ptr<const ScalingTable> table_;
};

Eigen::VectorXd eval_basis(const BasisSpec& spec, double t);

struct BasisMatrices {
  Eigen::MatrixXd gram;      // int B B^T
  Eigen::VectorXd bbar;      // int B
  Eigen::MatrixXd w;         // I - bbar bbar^T
  Eigen::MatrixXd centered;  // gram - bbar bbar^T, the weight used by the statistics
  std::vector<double> grid;
};

[[nodiscard]] int default_grid_size(int c) noexcept;

/// Trapezoid rule with order-8 Gregory end corrections on grid_size uniform
/// intervals of [0, 1].
BasisMatrices basis_matrices(const BasisSpec& spec, int grid_size);
inline BasisMatrices basis_matrices(const BasisSpec& spec) { return basis_matrices(spec, default_grid_size(spec.c)); }

}  // namespace tvar
