#pragma once

#include "tvar/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace tvar::testing {

// x_i = mu + sum_j a_j(i/n) (x_{i-j} - mu) + sigma e_i with Gaussian e, 200
// warm-up steps at t = 0.
inline std::vector<double> simulate_tvar(int n, const std::function<std::vector<double>(double)>& coef,
                                         std::uint64_t seed, double mu = 0.0, double sigma = 1.0) {
  Sampler sampler(seed, 0);
  const int warm = 200;
  std::vector<double> path(static_cast<std::size_t>(n + warm), 0.0);
  for (int s = 0; s < n + warm; ++s) {
    const double t = s < warm ? 0.0 : static_cast<double>(s - warm + 1) / n;
    const auto a = coef(t);
    double v = sigma * sampler.normal();
    for (std::size_t j = 0; j < a.size(); ++j)
      if (s > static_cast<int>(j)) v += a[j] * path[static_cast<std::size_t>(s) - j - 1];
    path[static_cast<std::size_t>(s)] = v;
  }
  std::vector<double> out(path.begin() + warm, path.end());
  for (auto& v : out) v += mu;
  return out;
}

inline std::vector<double> simulate_ar(int n, std::vector<double> a, std::uint64_t seed, double mu = 0.0) {
  return simulate_tvar(n, [a](double) { return a; }, seed, mu);
}

inline std::vector<double> white_noise(int n, std::uint64_t seed, double mu = 0.0, double sigma = 1.0) {
  Sampler sampler(seed, 0);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = mu + sigma * sampler.normal();
  return out;
}

}  // namespace tvar::testing
