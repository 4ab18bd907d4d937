#pragma once

#include "tvar/cov_oracle.hpp"
#include "tvar/pipeline.hpp"
#include "tvar/series.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tvar {

enum class ModelId {
  TvAR2,            // model 1
  TvMA2,            // model 2
  SETAR,            // model 3
  MarkovSwitch,     // model 4
  Bilinear,         // model 5
  StatARMA11,       // model 6
  StatSETAR,        // model 7
  NonstatLinear6s,  // model 6#
  PiecewiseLS7s,    // model 7#
};

enum class Innovation { Gaussian, StudentT5 };

struct ModelSpec {
  ModelId id = ModelId::TvAR2;
  bool alternative = false;
  double delta = 0.0;
  std::function<double(double)> a1;
  std::function<double(double)> a2;
  Innovation innovation = Innovation::Gaussian;
  int n = 256;
  int burn_in = 512;

  /// Null: a1 = a2 = 0.4. Alternative: a1 = 0.4, a2(t) = 0.2 + delta sin(2 pi t).
  /// Models 6-7 ignore delta; 6# and 7# use it as the sin(4 pi t) amplitude.
  static ModelSpec make(ModelId id, bool alternative, double delta, int n);

  /// "tvar2-null", "tvar2-alt", "tvma2-*", "setar-*", "markov-*",
  /// "bilinear-*", "arma11", "setar-stat", "nslinear6", "piecewise7".
  static ModelSpec parse(const std::string& name, double delta, int n);

  [[nodiscard]] std::string name() const;
  [[nodiscard]] bool time_varying_scale() const noexcept;
  void validate() const;
};

/// Runs burn_in + n steps with the clock frozen at t = 0 during burn-in and
/// returns the last n values.
TimeSeries simulate(const ModelSpec& model, std::uint64_t seed);

/// Exact local autocovariance for the linear models (1, 2, 6, 6#); throws
/// Unsupported for the nonlinear ones.
LocalAcov model_acov(const ModelSpec& model);

struct McOutcome {
  std::vector<double> alphas;
  std::vector<double> rates;  // fraction of p-values <= alpha
  std::vector<double> p_values;
  int reps = 0;
  int failures = 0;
};

/// Size/power experiment. Replicate r simulates with derive_seed(seed, r, 0)
/// and bootstraps with derive_seed(seed, r, 1); aborts with Config when more
/// than 5% of replicates fail.
McOutcome monte_carlo_size_power(const ModelSpec& model, const AutoTestOptions& test, int reps,
                                 const std::vector<double>& alphas, std::uint64_t seed);

/// "name" or "name:delta"; the suffix overrides the grid-wide delta.
std::pair<std::string, double> split_model_entry(const std::string& entry, double default_delta);

struct McGridConfig {
  std::vector<std::string> models;
  std::vector<int> lengths;
  std::vector<std::string> families;
  std::vector<double> alphas{0.05, 0.1};
  double delta = 0.35;
  int reps = 200;
  AutoTestOptions test;  // family is overridden per cell
  std::uint64_t seed = 1;
};

struct McCell {
  std::string model;
  double delta = 0.0;
  int n = 0;
  std::string family;
  McOutcome outcome;
};

struct McGrid {
  McGridConfig config;
  std::vector<McCell> cells;  // model-major, then length, then family
};

/// Every (model, n, family) cell of the grid. Cells sharing (model, n) reuse
/// the same simulated series so basis families are compared on common data.
McGrid run_mc_grid(const McGridConfig& config);

/// Paper-scale grid: models 1-5 under null and alternative, n in {256, 512},
/// Fourier / Legendre / Daubechies-9, reps = B = 1000.
McGridConfig full_table_config(std::uint64_t seed);

}  // namespace tvar
