#include "buffon/report.hpp"

#include <sstream>

namespace buffon {

using nlohmann::json;

json run_json(const std::string& expr, const std::string& binding, const RunStats& s,
              std::optional<double> oracle) {
    return json{
        {"expr", expr},
        {"binding", binding},
        {"n", s.n},
        {"seed", s.seed},
        {"successes", s.successes},
        {"p_hat", s.p_hat},
        {"ci95", {s.ci95[0], s.ci95[1]}},
        {"flips", {{"mean", s.flips.mean}, {"median", s.flips.median}, {"p95", s.flips.p95}, {"max", s.flips.max}}},
        {"censored", s.censored},
        {"oracle", oracle ? json(*oracle) : json(nullptr)},
    };
}

json pgf_json(const std::string& cls, const Rational& lambda, const RationalSeries& series) {
    json coeffs = json::array();
    for (const auto& c : series.coeffs()) coeffs.push_back(to_string(c));
    return json{{"class", cls}, {"lambda", to_string(lambda)}, {"order", series.order()}, {"coeffs", coeffs}};
}

json dist_json(const std::string& lambda_text, const Histogram& h) {
    json bins = json::object();
    for (const auto& [v, c] : h.bins) bins[std::to_string(v)] = c;
    return json{
        {"kind", std::string(to_string(h.kind))},
        {"lambda", lambda_text},
        {"lambda_value", h.lambda},
        {"n", h.n},
        {"seed", h.seed},
        {"bins", bins},
        {"chi_square", {{"statistic", h.chi.statistic}, {"dof", h.chi.dof}, {"p_value", h.chi.p_value}}},
        {"mean_trials", h.mean_trials},
        {"mean_flips", h.mean_flips},
    };
}

std::string flips_csv(const RunStats& s) {
    std::ostringstream out;
    out << "flips,count\n";
    for (const auto& [v, c] : s.flip_histogram) out << v << ',' << c << '\n';
    return out.str();
}

namespace {

std::string expect_keys(const json& doc, std::initializer_list<const char*> keys) {
    if (!doc.is_object()) return "not an object";
    if (doc.size() != keys.size()) return "expected " + std::to_string(keys.size()) + " keys";
    for (const auto* k : keys) {
        if (!doc.contains(k)) return std::string("missing key '") + k + "'";
    }
    return {};
}

}  // namespace

std::string check_run_schema(const json& doc) {
    if (auto err = expect_keys(doc, {"expr", "binding", "n", "seed", "successes", "p_hat", "ci95", "flips",
                                     "censored", "oracle"});
        !err.empty())
        return err;
    if (!doc["expr"].is_string() || !doc["binding"].is_string()) return "expr/binding must be strings";
    for (const auto* k : {"n", "seed", "successes", "censored"}) {
        if (!doc[k].is_number_unsigned()) return std::string(k) + " must be a nonnegative integer";
    }
    if (!doc["p_hat"].is_number()) return "p_hat must be a number";
    const auto& ci = doc["ci95"];
    if (!ci.is_array() || ci.size() != 2 || !ci[0].is_number() || !ci[1].is_number()) return "ci95 must be [lo, hi]";
    if (ci[0].get<double>() > doc["p_hat"].get<double>() || ci[1].get<double>() < doc["p_hat"].get<double>())
        return "ci95 must contain p_hat";
    if (doc["successes"].get<std::uint64_t>() > doc["n"].get<std::uint64_t>()) return "successes exceeds n";
    if (auto err = expect_keys(doc["flips"], {"mean", "median", "p95", "max"}); !err.empty()) return "flips: " + err;
    if (!doc["flips"]["mean"].is_number()) return "flips.mean must be a number";
    for (const auto* k : {"median", "p95", "max"}) {
        if (!doc["flips"][k].is_number_unsigned()) return std::string("flips.") + k + " must be an integer";
    }
    if (!doc["oracle"].is_null() && !doc["oracle"].is_number()) return "oracle must be a number or null";
    return {};
}

std::string check_pgf_schema(const json& doc) {
    if (auto err = expect_keys(doc, {"class", "lambda", "order", "coeffs"}); !err.empty()) return err;
    if (!doc["class"].is_string() || !doc["lambda"].is_string()) return "class/lambda must be strings";
    if (!doc["order"].is_number_unsigned()) return "order must be a nonnegative integer";
    if (!doc["coeffs"].is_array() || doc["coeffs"].size() != doc["order"].get<std::size_t>() + 1)
        return "coeffs must hold order + 1 entries";
    for (const auto& c : doc["coeffs"]) {
        if (!c.is_string()) return "coefficients must be rational strings";
        try {
            (void)parse_rational(c.get<std::string>());
        } catch (const std::invalid_argument&) {
            return "bad coefficient '" + c.get<std::string>() + "'";
        }
    }
    return {};
}

}  // namespace buffon
