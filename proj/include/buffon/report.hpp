#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "buffon/rational_series.hpp"
#include "buffon/runner.hpp"

namespace buffon {

/// {"expr","binding","n","seed","successes","p_hat","ci95":[lo,hi],
///  "flips":{"mean","median","p95","max"},"censored","oracle"}
nlohmann::json run_json(const std::string& expr, const std::string& binding, const RunStats& stats,
                        std::optional<double> oracle);

/// {"class","lambda":"a/b","order","coeffs":["num/den",...]}
nlohmann::json pgf_json(const std::string& cls, const Rational& lambda, const RationalSeries& series);

nlohmann::json dist_json(const std::string& lambda_text, const Histogram& h);

/// "flips,count" rows, one per observed flip count.
std::string flips_csv(const RunStats& stats);

/// Key set and value types of a run result. Returns an empty string when
/// the document conforms, otherwise the first problem found.
std::string check_run_schema(const nlohmann::json& doc);
std::string check_pgf_schema(const nlohmann::json& doc);

}  // namespace buffon
