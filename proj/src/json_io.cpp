#include "tvar/json_io.hpp"

#include "tvar/error.hpp"
#include "tvar/version.hpp"

namespace tvar::json {

json document(const std::string& kind, json payload) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["generated_by"] = std::string("tvar ") + kVersion;
  doc["kind"] = kind;
  for (auto& [key, value] : payload.items()) doc[key] = std::move(value);
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json basis_spec(const BasisSpec& spec) {
  json out = {{"family", spec.family_name()}, {"c", spec.c}};
  if (spec.family == BasisFamily::DaubechiesPeriodized) {
    out["wavelet_order"] = spec.wavelet_order;
    out["resolution"] = spec.resolution();
  }
  return out;
}

json matrix(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json vector(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json sieve_fit(const SieveFit& fit) {
  return {{"n", fit.n},
          {"b", fit.b},
          {"c", fit.c},
          {"basis", basis_spec(fit.spec)},
          {"beta_hat", vector(fit.beta)},
          {"sigma_hat", matrix(fit.sigma_hat)},
          {"residuals", fit.residuals},
          {"response_range", {fit.b + 1, fit.n}}};
}

json stability_result(const StabilityResult& result, bool include_draws) {
  const auto& cfg = result.config;
  json out = {{"statistic", result.statistic},
              {"p_value", result.p_value},
              {"bootstrap_draws", cfg.bootstrap_draws},
              {"config",
               {{"b_star", cfg.b_star},
                {"c", cfg.spec.c},
                {"m", cfg.m},
                {"B", cfg.bootstrap_draws},
                {"basis", basis_spec(cfg.spec)},
                {"seed", cfg.seed},
                {"include_intercept", cfg.include_intercept}}}};
  if (include_draws) out["draws"] = result.draws;
  return out;
}

json forecast_report(const ForecastReport& report) {
  return {{"point", report.point},
          {"mse_hat", report.mse.value},
          {"phi_at_one", vector(report.phi_at_one)},
          {"config", {{"b", report.b}, {"c", report.spec.c}, {"basis", basis_spec(report.spec)}}},
          {"diagnostics",
           {{"mse_raw", report.mse.raw},
            {"mse_floor", report.mse.floor},
            {"mse_floored", report.mse.floored},
            {"variance_residual_norm", report.mse.residual_norm}}}};
}

json cv_result(const CvResult& cv) {
  return {{"b_opt", cv.b_opt},
          {"c_opt", cv.c_opt},
          {"validation_length", cv.validation_length},
          {"b_candidates", cv.b_candidates},
          {"c_candidates", cv.c_candidates},
          {"cv_table", matrix(cv.table)},
          {"failures", cv.failures}};
}

json mv_result(const MvResult& mv) {
  json table = json::array();
  for (const auto& [m, se] : mv.table) table.push_back({{"m", m}, {"se", se}});
  return {{"m_opt", mv.m_opt}, {"h0", mv.h0}, {"mv_table", std::move(table)}};
}

json tuning_result(const TuningResult& tuning) {
  json out = {{"b_opt", tuning.b_opt}, {"c_opt", tuning.c_opt}, {"m_opt", tuning.m_opt}};
  out["cv"] = cv_result(tuning.cv);
  out["mv"] = mv_result(tuning.mv);
  return out;
}

json updc_report(const UpdcReport& report) {
  return {{"kappa_min", report.kappa_min},
          {"pass", report.pass},
          {"t_at_min", report.t_at_min},
          {"omega_at_min", report.omega_at_min},
          {"truncation_bound", report.truncation_bound}};
}

json mc_grid(const McGrid& grid) {
  const auto& cfg = grid.config;
  json table = json::array();
  for (const auto& cell : grid.cells) {
    for (std::size_t a = 0; a < cell.outcome.alphas.size(); ++a) {
      table.push_back({{"model", cell.model},
                       {"delta", cell.delta},
                       {"n", cell.n},
                       {"basis", cell.family},
                       {"alpha", cell.outcome.alphas[a]},
                       {"rate", cell.outcome.rates[a]},
                       {"reps", cell.outcome.reps},
                       {"failures", cell.outcome.failures}});
    }
  }
  return {{"config",
           {{"models", cfg.models},
            {"lengths", cfg.lengths},
            {"bases", cfg.families},
            {"alphas", cfg.alphas},
            {"delta", cfg.delta},
            {"reps", cfg.reps},
            {"B", cfg.test.bootstrap_draws},
            {"b_star", cfg.test.b_star},
            {"c", cfg.test.c},
            {"m", cfg.test.m},
            {"include_intercept", cfg.test.include_intercept},
            {"demean", cfg.test.demean},
            {"seed", cfg.seed}}},
          {"table", std::move(table)}};
}

SieveFit parse_sieve_fit(const json& doc) {
  try {
    require(doc.at("schema_version").get<int>() == kSchemaVersion, ErrorCode::Parse, "unsupported schema_version");
    SieveFit fit;
    fit.n = doc.at("n").get<int>();
    fit.b = doc.at("b").get<int>();
    fit.c = doc.at("c").get<int>();
    const auto& basis = doc.at("basis");
    fit.spec = BasisSpec::parse(basis.at("family").get<std::string>(), basis.at("c").get<int>());
    const auto beta = doc.at("beta_hat").get<std::vector<double>>();
    fit.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    const auto rows = doc.at("sigma_hat").get<std::vector<std::vector<double>>>();
    fit.sigma_hat.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      require(rows[r].size() == rows.size(), ErrorCode::Parse, "sigma_hat must be square");
      for (std::size_t c = 0; c < rows.size(); ++c)
        fit.sigma_hat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    fit.residuals = doc.at("residuals").get<std::vector<double>>();
    require(fit.beta.size() == static_cast<Eigen::Index>(fit.b + 1) * fit.c, ErrorCode::Parse,
            "beta_hat length does not equal (b+1)c");
    return fit;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed fit document: ") + e.what());
  }
}

}  // namespace tvar::json
