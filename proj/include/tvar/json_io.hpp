#pragma once

#include "tvar/cov_oracle.hpp"
#include "tvar/forecast.hpp"
#include "tvar/simgen.hpp"
#include "tvar/sieve_fit.hpp"
#include "tvar/stability_test.hpp"
#include "tvar/tuning.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace tvar::json {

using json = nlohmann::ordered_json;

/// Top-level document: {"schema_version": 1, "generated_by": ..., "kind": kind, ...payload}.
json document(const std::string& kind, json payload);

/// Pretty-printed with a trailing newline. Doubles use the shortest
/// representation that round-trips exactly; non-finite values become null.
std::string dump(const json& doc);

json basis_spec(const BasisSpec& spec);
json matrix(const Eigen::MatrixXd& m);  // row-major nested arrays
json vector(const Eigen::VectorXd& v);

json sieve_fit(const SieveFit& fit);
json stability_result(const StabilityResult& result, bool include_draws);
json forecast_report(const ForecastReport& report);
json cv_result(const CvResult& cv);
json mv_result(const MvResult& mv);
json tuning_result(const TuningResult& tuning);
json updc_report(const UpdcReport& report);
json mc_grid(const McGrid& grid);

/// Reads a SieveFit document back (series not included; h_sequence is
/// unavailable on the result).
SieveFit parse_sieve_fit(const json& doc);

}  // namespace tvar::json
