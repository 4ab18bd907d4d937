#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace tvar {

/// SplitMix64 finalizer; used to derive independent stream keys from
/// (seed, index...) tuples.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The output for (key, stream, position) is a pure function of those three
/// values, so replicate r always sees the same numbers regardless of which
/// worker thread runs it or in which order replicates are scheduled.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t key, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)}, stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (lane_ == 2) {
      block_ = generate(counter_++);
      lane_ = 0;
    }
    const auto lo = static_cast<std::uint64_t>(block_[2 * lane_]);
    const auto hi = static_cast<std::uint64_t>(block_[2 * lane_ + 1]);
    ++lane_;
    return (hi << 32) | lo;
  }

  /// Uniform double in the open interval (0, 1).
  double uniform() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::array<std::uint32_t, 4> generate(std::uint64_t position) const noexcept {
    std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32),
                                     static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53U) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57U) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += 0x9E3779B9U;
      key[1] += 0xBB67AE85U;
    }
    return ctr;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int lane_ = 2;
};

/// Standard normal and Student-t variates from a Philox stream. Box-Muller is
/// used instead of std::normal_distribution so draws are identical across
/// standard library implementations.
class Sampler {
 public:
  Sampler(std::uint64_t key, std::uint64_t stream) noexcept : engine_(key, stream) {}

  double uniform() noexcept { return engine_.uniform(); }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(engine_.uniform()));
    const double angle = 2.0 * std::numbers::pi * engine_.uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Unstandardized t(dof) variate: Z / sqrt(chi2_dof / dof), integer dof.
  double student_t(int dof) noexcept {
    const double z = normal();
    double chi2 = 0.0;
    for (int k = 0; k < dof; ++k) {
      const double g = normal();
      chi2 += g * g;
    }
    return z / std::sqrt(chi2 / dof);
  }

 private:
  Philox engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tvar
