// tvar command-line front end. Links only the C API.

#include "tvar/tvar.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr std::uint64_t kDefaultSeed = 20240101;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CommandFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(tvar_status status) {
  switch (status) {
    case TVAR_OK: return kExitOk;
    case TVAR_E_CONFIG:
    case TVAR_E_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitDomain;
  }
}

void check(tvar_status status) {
  if (status != TVAR_OK)
    throw CommandFailure{exit_code_for(status), std::string(tvar_status_name(status)) + ": " + tvar_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using SeriesPtr = std::unique_ptr<tvar_series, Deleter<tvar_series, tvar_series_free>>;
using FitPtr = std::unique_ptr<tvar_fit, Deleter<tvar_fit, tvar_fit_free>>;
using StabilityPtr = std::unique_ptr<tvar_stability, Deleter<tvar_stability, tvar_stability_free>>;
using ForecastPtr = std::unique_ptr<tvar_forecast, Deleter<tvar_forecast, tvar_forecast_free>>;
using TuningPtr = std::unique_ptr<tvar_tuning, Deleter<tvar_tuning, tvar_tuning_free>>;
using McPtr = std::unique_ptr<tvar_mc, Deleter<tvar_mc, tvar_mc_free>>;

std::string take_string(char* raw) {
  std::string out(raw);
  tvar_string_free(raw);
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CommandFailure{kExitDomain, "cannot open output file '" + path + "'"};
  file << text;
  if (!file) throw CommandFailure{kExitDomain, "failed writing '" + path + "'"};
}

SeriesPtr load(const std::string& path) {
  tvar_series* raw = nullptr;
  check(tvar_series_read_csv(path.c_str(), &raw));
  return SeriesPtr(raw);
}

std::string series_csv(const tvar_series* series) {
  std::string out = "x\n";
  const double* values = tvar_series_values(series);
  char buf[64];
  for (size_t i = 0; i < tvar_series_length(series); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", values[i]);
    out += buf;
  }
  return out;
}

int threads_from_env() {
  const char* env = std::getenv("TVAR_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const int value = std::stoi(env, &used);
    if (used != std::string(env).size() || value < 0) throw std::invalid_argument(env);
    return value;
  } catch (const std::exception&) {
    throw CommandFailure{kExitUsage, std::string("TVAR_THREADS must be a non-negative integer, got '") + env + "'"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-varying AR sieve fitting, stability testing and forecasting"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("tvar ") + tvar_version());

  std::optional<int> threads;
  std::string output;
  app.add_option("--threads", threads, "Worker threads (0 = all cores; default $TVAR_THREADS or 0)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("-o,--output", output, "Output file (default stdout)");

  std::string input;
  std::string basis = "fourier";
  std::uint64_t seed = kDefaultSeed;
  bool demean = false;

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate a model and write a one-column CSV");
  std::string sim_model;
  double sim_delta = 0.35;
  std::size_t sim_n = 256;
  int sim_burn = 0;
  sim->add_option("--model", sim_model, "Model name, e.g. tvar2-null, markov-alt, arma11")->required();
  sim->add_option("--n", sim_n, "Length")->capture_default_str();
  sim->add_option("--delta", sim_delta, "Alternative amplitude")->capture_default_str();
  sim->add_option("--burn-in", sim_burn, "Burn-in steps (0 = 512)")->capture_default_str();
  sim->add_option("--seed", seed, "Random seed")->capture_default_str();

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit a sieve AR approximation and print it as JSON");
  int fit_b = 0;
  int fit_c = 0;
  fit_cmd->add_option("--input", input, "CSV series")->required();
  fit_cmd->add_option("--basis", basis, "fourier, legendre or daub<N>")->capture_default_str();
  fit_cmd->add_option("--b", fit_b, "AR order")->required()->check(CLI::PositiveNumber);
  fit_cmd->add_option("--c", fit_c, "Number of basis functions")->required()->check(CLI::PositiveNumber);

  // test
  auto* test = app.add_subcommand("test", "Multiplier-bootstrap stability test");
  tvar_test_options test_opts;
  tvar_test_options_init(&test_opts);
  bool include_intercept = false;
  bool include_draws = false;
  test->add_option("--input", input, "CSV series")->required();
  test->add_option("--basis", basis, "fourier, legendre or daub<N>")->capture_default_str();
  test->add_option("--c", test_opts.c, "Basis size (0 = cross-validated)")->check(CLI::NonNegativeNumber);
  test->add_option("--b-star", test_opts.b_star, "AR order (0 = cross-validated)")->check(CLI::NonNegativeNumber);
  test->add_option("--m", test_opts.m, "Window size (0 = minimum volatility)")->check(CLI::NonNegativeNumber);
  test->add_option("--B", test_opts.bootstrap_draws, "Bootstrap draws")->capture_default_str();
  test->add_option("--seed", seed, "Random seed")->capture_default_str();
  test->add_flag("--include-intercept", include_intercept, "Test phi_0 as well");
  test->add_flag("--draws", include_draws, "Include the sorted bootstrap draws");
  test->add_flag("--demean", demean, "Subtract the sample mean first");

  // forecast
  auto* fc = app.add_subcommand("forecast", "One-step forecast with estimated MSE");
  tvar_forecast_options fc_opts;
  tvar_forecast_options_init(&fc_opts);
  fc->add_option("--input", input, "CSV series")->required();
  fc->add_option("--basis", basis, "fourier, legendre or daub<N>")->capture_default_str();
  fc->add_option("--c", fc_opts.c, "Basis size (0 = cross-validated)")->check(CLI::NonNegativeNumber);
  fc->add_option("--b", fc_opts.b, "AR order (0 = cross-validated)")->check(CLI::NonNegativeNumber);
  fc->add_flag("--demean", demean, "Subtract the sample mean first and add it back");

  // tune
  auto* tune = app.add_subcommand("tune", "Cross-validate (b, c) and choose m by minimum volatility");
  std::vector<int> b_cands;
  std::vector<int> c_cands;
  std::vector<int> m_cands;
  int validation_length = 0;
  int h0 = 3;
  bool for_forecast = false;
  tune->add_option("--input", input, "CSV series")->required();
  tune->add_option("--basis", basis, "fourier, legendre or daub<N>")->capture_default_str();
  tune->add_option("--b", b_cands, "Candidate AR orders")->delimiter(',');
  tune->add_option("--c", c_cands, "Candidate basis sizes")->delimiter(',');
  tune->add_option("--m", m_cands, "Candidate window sizes")->delimiter(',');
  tune->add_option("--l", validation_length, "Validation length (0 = floor(3 log2 n))");
  tune->add_option("--h0", h0, "Minimum-volatility half width")->capture_default_str();
  tune->add_flag("--for-forecast", for_forecast, "Allow c = 1 in the default grid");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo size/power table");
  std::vector<std::string> mc_models;
  std::vector<std::size_t> mc_lengths;
  std::vector<std::string> mc_bases;
  std::vector<double> mc_alphas;
  tvar_mc_options mc_opts;
  tvar_mc_options_init(&mc_opts);
  bool full_table = false;
  mc->add_option("--model", mc_models, "Model names, optionally name:delta")->delimiter(',');
  mc->add_option("--n", mc_lengths, "Series lengths")->delimiter(',');
  mc->add_option("--basis", mc_bases, "Basis families")->delimiter(',');
  mc->add_option("--alpha", mc_alphas, "Levels (default 0.05,0.1)")->delimiter(',');
  mc->add_option("--delta", mc_opts.delta, "Alternative amplitude")->capture_default_str();
  mc->add_option("--reps", mc_opts.reps, "Replicates per cell")->capture_default_str();
  mc->add_option("--B", mc_opts.bootstrap_draws, "Bootstrap draws")->capture_default_str();
  mc->add_option("--b-star", mc_opts.b_star, "AR order (0 = tuned)");
  mc->add_option("--c", mc_opts.c, "Basis size (0 = tuned)");
  mc->add_option("--m", mc_opts.m, "Window size (0 = tuned)");
  mc->add_option("--seed", mc_opts.seed, "Random seed")->capture_default_str();
  mc->add_flag("--full-table", full_table,
               "Five models, null and alternatives, n in {256,512}, three bases, reps = B = 1000");

  // updc-check
  auto* updc = app.add_subcommand("updc-check", "Minimum local spectral density of a linear model");
  std::string updc_model = "tvar2-null";
  double updc_delta = 0.35;
  std::size_t t_points = 101;
  std::size_t omega_points = 257;
  int truncation = 200;
  updc->add_option("--model", updc_model, "Linear model name or white-noise")->capture_default_str();
  updc->add_option("--delta", updc_delta, "Alternative amplitude")->capture_default_str();
  updc->add_option("--t-points", t_points, "Grid points on [0,1]")->capture_default_str();
  updc->add_option("--omega-points", omega_points, "Grid points on [-pi,pi]")->capture_default_str();
  updc->add_option("--truncation", truncation, "Autocovariance lags summed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n";
    CLI::App* active = &app;
    for (auto* sub : app.get_subcommands()) active = sub;
    std::cerr << active->help();
    return kExitUsage;
  }

  try {
    tvar_set_threads(threads ? *threads : threads_from_env());

    if (*sim) {
      tvar_series* raw = nullptr;
      check(tvar_simulate(sim_model.c_str(), sim_delta, sim_n, sim_burn, seed, &raw));
      SeriesPtr series(raw);
      emit(series_csv(series.get()), output);
    } else if (*fit_cmd) {
      auto series = load(input);
      tvar_fit* raw = nullptr;
      check(tvar_fit_create(series.get(), fit_b, basis.c_str(), fit_c, &raw));
      FitPtr fit(raw);
      char* json = nullptr;
      check(tvar_fit_to_json(fit.get(), &json));
      emit(take_string(json), output);
    } else if (*test) {
      auto series = load(input);
      test_opts.family = basis.c_str();
      test_opts.seed = seed;
      test_opts.include_intercept = include_intercept ? 1 : 0;
      test_opts.demean = demean ? 1 : 0;
      tvar_stability* raw = nullptr;
      check(tvar_test_run(series.get(), &test_opts, &raw));
      StabilityPtr result(raw);
      char* json = nullptr;
      check(tvar_stability_to_json(result.get(), include_draws ? 1 : 0, &json));
      emit(take_string(json), output);
    } else if (*fc) {
      auto series = load(input);
      fc_opts.family = basis.c_str();
      fc_opts.demean = demean ? 1 : 0;
      tvar_forecast* raw = nullptr;
      check(tvar_forecast_run(series.get(), &fc_opts, &raw));
      ForecastPtr report(raw);
      char* json = nullptr;
      check(tvar_forecast_to_json(report.get(), &json));
      emit(take_string(json), output);
    } else if (*tune) {
      auto series = load(input);
      tvar_tune_options opts;
      tvar_tune_options_init(&opts);
      opts.family = basis.c_str();
      opts.b_candidates = b_cands.data();
      opts.b_count = b_cands.size();
      opts.c_candidates = c_cands.data();
      opts.c_count = c_cands.size();
      opts.m_candidates = m_cands.data();
      opts.m_count = m_cands.size();
      opts.validation_length = validation_length;
      opts.h0 = h0;
      opts.for_testing = for_forecast ? 0 : 1;
      tvar_tuning* raw = nullptr;
      check(tvar_tune_run(series.get(), &opts, &raw));
      TuningPtr tuning(raw);
      char* json = nullptr;
      check(tvar_tuning_to_json(tuning.get(), &json));
      emit(take_string(json), output);
    } else if (*mc) {
      if (full_table) {
        if (mc_models.empty())
          mc_models = {"tvar2-null",       "tvma2-null",       "setar-null",     "markov-null",
                       "bilinear-null",    "tvar2-alt:0.2",    "tvar2-alt:0.35", "tvma2-alt:0.2",
                       "tvma2-alt:0.35",   "setar-alt:0.5",    "setar-alt:0.7",  "markov-alt:0.5",
                       "markov-alt:0.7",   "bilinear-alt:0.5", "bilinear-alt:0.7"};
        if (mc_lengths.empty()) mc_lengths = {256, 512};
        if (mc_bases.empty()) mc_bases = {"fourier", "legendre", "daub9"};
        if (mc->count("--reps") == 0) mc_opts.reps = 1000;
        if (mc->count("--B") == 0) mc_opts.bootstrap_draws = 1000;
      }
      if (mc_models.empty()) mc_models = {"tvar2-null"};
      if (mc_lengths.empty()) mc_lengths = {256};
      if (mc_bases.empty()) mc_bases = {"fourier"};
      std::vector<const char*> model_ptrs;
      for (const auto& m : mc_models) model_ptrs.push_back(m.c_str());
      std::vector<const char*> basis_ptrs;
      for (const auto& b : mc_bases) basis_ptrs.push_back(b.c_str());
      mc_opts.models = model_ptrs.data();
      mc_opts.model_count = model_ptrs.size();
      mc_opts.lengths = mc_lengths.data();
      mc_opts.length_count = mc_lengths.size();
      mc_opts.families = basis_ptrs.data();
      mc_opts.family_count = basis_ptrs.size();
      mc_opts.alphas = mc_alphas.empty() ? nullptr : mc_alphas.data();
      mc_opts.alpha_count = mc_alphas.size();
      tvar_mc* raw = nullptr;
      check(tvar_mc_run(&mc_opts, &raw));
      McPtr grid(raw);
      char* json = nullptr;
      check(tvar_mc_to_json(grid.get(), &json));
      emit(take_string(json), output);
    } else if (*updc) {
      tvar_updc_report report{};
      check(tvar_updc_check(updc_model.c_str(), updc_delta, t_points, omega_points, truncation, &report));
      char* json = nullptr;
      check(tvar_updc_to_json(updc_model.c_str(), updc_delta, &report, &json));
      emit(take_string(json), output);
      if (report.pass == 0) {
        std::cerr << "tvar: UPDC violated (minimum spectral density " << report.kappa_min << ")\n";
        return kExitDomain;
      }
    }
  } catch (const CommandFailure& failure) {
    std::cerr << "tvar: " << failure.message << "\n";
    return failure.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "tvar: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
