#include "tvar/simgen.hpp"

#include "tvar/error.hpp"
#include "tvar/parallel.hpp"
#include "tvar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tvar {

namespace {

struct ModelName {
  const char* base;
  ModelId id;
  bool has_hypothesis;
};

constexpr ModelName kModelNames[] = {
    {"tvar2", ModelId::TvAR2, true},         {"tvma2", ModelId::TvMA2, true},
    {"setar", ModelId::SETAR, true},         {"markov", ModelId::MarkovSwitch, true},
    {"bilinear", ModelId::Bilinear, true},   {"arma11", ModelId::StatARMA11, false},
    {"setar-stat", ModelId::StatSETAR, false}, {"nslinear6", ModelId::NonstatLinear6s, false},
    {"piecewise7", ModelId::PiecewiseLS7s, false},
};

bool is_paper_model(ModelId id) {
  return id == ModelId::TvAR2 || id == ModelId::TvMA2 || id == ModelId::SETAR || id == ModelId::MarkovSwitch ||
         id == ModelId::Bilinear;
}

double scale_function(double t) { return 0.4 + 0.4 * std::abs(std::sin(2.0 * std::numbers::pi * t)); }

}  // namespace

ModelSpec ModelSpec::make(ModelId id, bool alternative, double delta, int n) {
  ModelSpec spec;
  spec.id = id;
  spec.alternative = alternative;
  spec.delta = delta;
  spec.n = n;
  spec.innovation = (id == ModelId::TvAR2 || id == ModelId::TvMA2) ? Innovation::StudentT5 : Innovation::Gaussian;
  spec.a1 = [](double) { return 0.4; };
  if (alternative) {
    spec.a2 = [delta](double t) { return 0.2 + delta * std::sin(2.0 * std::numbers::pi * t); };
  } else {
    spec.a2 = [](double) { return 0.4; };
  }
  switch (id) {
    case ModelId::StatARMA11:
      spec.a1 = [](double) { return 0.5; };
      spec.a2 = [](double) { return 0.5; };
      break;
    case ModelId::StatSETAR:
      spec.a1 = [](double) { return 0.4; };
      spec.a2 = [](double) { return 0.5; };
      break;
    case ModelId::NonstatLinear6s:
    case ModelId::PiecewiseLS7s:
      spec.a1 = [delta](double t) { return delta * std::sin(4.0 * std::numbers::pi * t); };
      spec.a2 = [](double) { return 0.0; };
      break;
    default:
      break;
  }
  return spec;
}

ModelSpec ModelSpec::parse(const std::string& name, double delta, int n) {
  for (const auto& entry : kModelNames) {
    const std::string base = entry.base;
    if (!entry.has_hypothesis) {
      if (name == base) return make(entry.id, false, delta, n);
      continue;
    }
    if (name == base + "-null") return make(entry.id, false, delta, n);
    if (name == base + "-alt") return make(entry.id, true, delta, n);
  }
  fail(ErrorCode::Config, "unknown model '" + name + "'");
}

std::string ModelSpec::name() const {
  for (const auto& entry : kModelNames) {
    if (entry.id != id) continue;
    std::string out = entry.base;
    if (entry.has_hypothesis) out += alternative ? "-alt" : "-null";
    return out;
  }
  return "unknown";
}

bool ModelSpec::time_varying_scale() const noexcept { return is_paper_model(id); }

void ModelSpec::validate() const {
  require(n >= 64, ErrorCode::Config, "model length n must be >= 64");
  require(burn_in >= 100, ErrorCode::Config, "burn-in must be >= 100");
  require(delta >= 0.0, ErrorCode::Config, "delta must be >= 0");
  require(static_cast<bool>(a1) && static_cast<bool>(a2), ErrorCode::Config, "coefficient functions missing");
}

TimeSeries simulate(const ModelSpec& model, std::uint64_t seed) {
  model.validate();
  Sampler sampler(seed, 0);
  const int total = model.burn_in + model.n;
  const double n = model.n;

  TimeSeries out;
  out.values.reserve(static_cast<std::size_t>(model.n));
  out.source = model.name();

  double x_prev = 0.0;
  double x_prev2 = 0.0;
  double eps_prev = 0.0;
  double eps_prev2 = 0.0;
  int state = 1;
  for (int step = 0; step < total; ++step) {
    const int i = step - model.burn_in + 1;  // time index of kept observations
    const double t = std::clamp(i / n, 0.0, 1.0);
    const double eta = model.innovation == Innovation::StudentT5 ? sampler.student_t(5) : sampler.normal();
    const double eps = (model.time_varying_scale() ? scale_function(t) : 1.0) * eta;

    double x = 0.0;
    switch (model.id) {
      case ModelId::TvAR2:
        x = model.a1(t) * x_prev + model.a2(t) * x_prev2 + eps;
        break;
      case ModelId::TvMA2:
        x = model.a1(t) * eps_prev + model.a2(t) * eps_prev2 + eps;
        break;
      case ModelId::SETAR:
      case ModelId::StatSETAR:
        x = (x_prev >= 0.0 ? model.a1(t) : model.a2(t)) * x_prev + eps;
        break;
      case ModelId::MarkovSwitch: {
        const double u = sampler.uniform();
        if (state == 0) {
          state = (u < 2.0 / 3.0) ? 0 : 1;
        } else {
          state = (u < 0.5) ? 0 : 1;
        }
        x = (state == 0 ? model.a1(t) : model.a2(t)) * x_prev + eps;
        break;
      }
      case ModelId::Bilinear:
        x = (model.a1(t) * eps_prev + model.a2(t)) * x_prev + eps;
        break;
      case ModelId::StatARMA11:
        x = model.a1(t) * x_prev + eps + model.a2(t) * eps_prev;
        break;
      case ModelId::NonstatLinear6s:
        x = model.a1(t) * x_prev + eps;
        break;
      case ModelId::PiecewiseLS7s:
        if (i <= 0.75 * n) {
          x = model.a1(t) * x_prev + eps;
        } else {
          x = (x_prev >= 0.0 ? 0.4 : 0.3) * x_prev + eps;
        }
        break;
    }

    eps_prev2 = eps_prev;
    eps_prev = eps;
    x_prev2 = x_prev;
    x_prev = x;
    if (i >= 1) out.values.push_back(x);
  }
  return out;
}

LocalAcov model_acov(const ModelSpec& model) {
  const double eta_var = model.innovation == Innovation::StudentT5 ? 5.0 / 3.0 : 1.0;
  const auto a1 = model.a1;
  const auto a2 = model.a2;
  const std::function<double(double)> sigma =
      model.time_varying_scale() ? std::function<double(double)>(scale_function) : [](double) { return 1.0; };
  switch (model.id) {
    case ModelId::TvAR2:
      return local_arma_acov([a1, a2](double t) { return std::vector<double>{a1(t), a2(t)}; },
                             [](double) { return std::vector<double>{}; }, sigma, eta_var);
    case ModelId::TvMA2:
      return local_arma_acov([](double) { return std::vector<double>{}; },
                             [a1, a2](double t) { return std::vector<double>{a1(t), a2(t)}; }, sigma, eta_var);
    case ModelId::StatARMA11:
      return local_arma_acov([a1](double t) { return std::vector<double>{a1(t)}; },
                             [a2](double t) { return std::vector<double>{a2(t)}; }, sigma, eta_var);
    case ModelId::NonstatLinear6s:
      return local_arma_acov([a1](double t) { return std::vector<double>{a1(t)}; },
                             [](double) { return std::vector<double>{}; }, sigma, eta_var);
    default:
      fail(ErrorCode::Unsupported, "no closed-form local autocovariance for nonlinear model '" + model.name() + "'");
  }
}

McOutcome monte_carlo_size_power(const ModelSpec& model, const AutoTestOptions& test, int reps,
                                 const std::vector<double>& alphas, std::uint64_t seed) {
  require(reps >= 50, ErrorCode::Config, "Monte Carlo needs reps >= 50, got " + std::to_string(reps));
  require(!alphas.empty(), ErrorCode::Config, "at least one alpha level required");
  model.validate();

  McOutcome out;
  out.alphas = alphas;
  out.reps = reps;
  out.p_values.assign(static_cast<std::size_t>(reps), std::numeric_limits<double>::quiet_NaN());
  std::vector<char> failed(static_cast<std::size_t>(reps), 0);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
    try {
      const TimeSeries series = simulate(model, derive_seed(seed, r, 0));
      AutoTestOptions options = test;
      options.seed = derive_seed(seed, r, 1);
      out.p_values[r] = run_test_auto(series.values, options).result.p_value;
    } catch (const Error&) {
      failed[r] = 1;
    }
  });
  out.failures = static_cast<int>(std::count(failed.begin(), failed.end(), 1));
  require(out.failures * 20 <= reps, ErrorCode::Config,
          std::to_string(out.failures) + " of " + std::to_string(reps) + " replicates failed (> 5%)");

  const int valid = reps - out.failures;
  for (const double alpha : alphas) {
    int rejected = 0;
    for (std::size_t r = 0; r < out.p_values.size(); ++r)
      if (!failed[r] && out.p_values[r] <= alpha) ++rejected;
    out.rates.push_back(static_cast<double>(rejected) / valid);
  }
  return out;
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::pair<std::string, double> split_model_entry(const std::string& entry, double default_delta) {
  const auto colon = entry.find(':');
  if (colon == std::string::npos) return {entry, default_delta};
  require(colon > 0, ErrorCode::Config, "malformed model entry '" + entry + "' (empty model name)");
  try {
    std::size_t used = 0;
    const double delta = std::stod(entry.substr(colon + 1), &used);
    if (used != entry.size() - colon - 1) throw std::invalid_argument(entry);
    return {entry.substr(0, colon), delta};
  } catch (const std::exception&) {
    fail(ErrorCode::Config, "malformed model entry '" + entry + "' (expected name or name:delta)");
  }
}

McGrid run_mc_grid(const McGridConfig& config) {
  require(!config.models.empty() && !config.lengths.empty() && !config.families.empty(), ErrorCode::Config,
          "Monte Carlo grid needs at least one model, length and basis family");
  McGrid grid;
  grid.config = config;
  for (const auto& model_entry : config.models) {
    const auto [model_name, delta] = split_model_entry(model_entry, config.delta);
    for (const int n : config.lengths) {
      const ModelSpec model = ModelSpec::parse(model_name, delta, n);
      const std::uint64_t cell_seed = derive_seed(config.seed, fnv1a(model_entry), static_cast<std::uint64_t>(n));
      for (const auto& family : config.families) {
        AutoTestOptions test = config.test;
        test.family = BasisSpec::parse(family, 2);
        McCell cell;
        cell.model = model_name;
        cell.delta = delta;
        cell.n = n;
        cell.family = family;
        cell.outcome = monte_carlo_size_power(model, test, config.reps, config.alphas, cell_seed);
        grid.cells.push_back(std::move(cell));
      }
    }
  }
  return grid;
}

McGridConfig full_table_config(std::uint64_t seed) {
  McGridConfig config;
  config.models = {"tvar2-null",        "tvma2-null",         "setar-null",        "markov-null",
                   "bilinear-null",     "tvar2-alt:0.2",      "tvar2-alt:0.35",    "tvma2-alt:0.2",
                   "tvma2-alt:0.35",    "setar-alt:0.5",      "setar-alt:0.7",     "markov-alt:0.5",
                   "markov-alt:0.7",    "bilinear-alt:0.5",   "bilinear-alt:0.7"};
  config.lengths = {256, 512};
  config.families = {"fourier", "legendre", "daub9"};
  config.alphas = {0.05, 0.1};
  config.reps = 1000;
  config.test.bootstrap_draws = 1000;
  config.seed = seed;
  return config;
}

}  // namespace tvar
