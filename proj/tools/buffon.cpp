// buffon: exact Bernoulli sampling from fair coin flips.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "buffon/bit_source.hpp"
#include "buffon/cost_pgf.hpp"
#include "buffon/dsl.hpp"
#include "buffon/oracle.hpp"
#include "buffon/registry.hpp"
#include "buffon/report.hpp"
#include "buffon/runner.hpp"

using namespace buffon;
using nlohmann::json;

namespace {

const NamedMachine* weak_match(const Expr& e) {
    for (const auto& m : named_machines()) {
        if (m.weak && *m.expr == e) return &m;
    }
    return nullptr;
}

std::optional<double> try_oracle(const Expr& e, const ExprPtr& binding) {
    try {
        return oracle_value(e, binding).value;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void print_human(const std::string& expr, const std::string& binding, const RunStats& s,
                 std::optional<double> oracle, bool weak) {
    std::printf("expr      %s\n", expr.c_str());
    if (!binding.empty()) std::printf("x         %s\n", binding.c_str());
    std::printf("n         %llu (seed %llu)\n", static_cast<unsigned long long>(s.n),
                static_cast<unsigned long long>(s.seed));
    std::printf("p_hat     %.6f  [%.6f, %.6f]\n", s.p_hat, s.ci95[0], s.ci95[1]);
    if (oracle) std::printf("oracle    %.10f\n", *oracle);
    if (weak) {
        std::printf("flips     median %llu  p95 %llu  max %llu  (mean %.3f, unstable)\n",
                    static_cast<unsigned long long>(s.flips.median), static_cast<unsigned long long>(s.flips.p95),
                    static_cast<unsigned long long>(s.flips.max), s.flips.mean);
    } else {
        std::printf("flips     mean %.3f  median %llu  p95 %llu  max %llu\n", s.flips.mean,
                    static_cast<unsigned long long>(s.flips.median), static_cast<unsigned long long>(s.flips.p95),
                    static_cast<unsigned long long>(s.flips.max));
    }
    if (s.censored) std::printf("censored  %llu\n", static_cast<unsigned long long>(s.censored));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Bernoulli sampling from fair coin flips"};
    app.require_subcommand(1);

    std::string expr_text;
    std::string at_text;
    std::uint64_t n = 100000;
    std::uint64_t seed = default_seed();
    std::uint64_t budget = 0;
    unsigned workers = 1;
    bool as_json = false;
    bool as_csv = false;

    auto* eval = app.add_subcommand("eval", "Evaluate the denoted function numerically");
    eval->add_option("expr", expr_text, "Expression")->required();
    eval->add_option("--at", at_text, "Closed expression bound to x");

    auto* sample = app.add_subcommand("sample", "Run a machine n times");
    sample->add_option("expr", expr_text, "Expression")->required();
    sample->add_option("--at", at_text, "Closed expression bound to x");
    sample->add_option("-n", n, "Number of samples")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Seed (default: $BUFFON_SEED)");
    sample->add_option("--budget", budget, "Per-sample flip budget; exhausted samples are censored");
    sample->add_option("--workers", workers, "Worker threads, each with its own seeded source")
        ->check(CLI::PositiveNumber);
    auto* json_flag = sample->add_flag("--json", as_json, "JSON output");
    sample->add_flag("--csv", as_csv, "Flip-count histogram as CSV")->excludes(json_flag);

    std::string kind_text;
    std::string lambda_text;
    auto* dist = app.add_subcommand("dist", "Sample a von Neumann variate and test its law");
    dist->add_option("kind", kind_text, "poisson | logarithmic | geometric")->required();
    dist->add_option("--lambda", lambda_text, "Closed expression for lambda")->required();
    dist->add_option("-n", n, "Number of samples")->check(CLI::PositiveNumber);
    dist->add_option("--seed", seed, "Seed (default: $BUFFON_SEED)");

    std::string class_text = "sorted";
    std::size_t order = kDefaultPgfOrder;
    auto* pgf = app.add_subcommand("pgf", "Exact cost PGF of the von Neumann schema");
    pgf->add_option("--class", class_text, "Permutation class");
    pgf->add_option("--lambda", lambda_text, "Rational a/b in (0,1)")->required();
    pgf->add_option("--order", order, "Truncation order");

    std::string name_text = "list";
    auto* named_cmd = app.add_subcommand("named", "List or show registered machines");
    named_cmd->add_option("name", name_text, "list, or a machine name");

    std::string grammar_file;
    auto* grammar_cmd = app.add_subcommand("grammar", "Run a grammar machine from a grammar file");
    grammar_cmd->add_option("file", grammar_file, "Grammar file")->required()->check(CLI::ExistingFile);
    grammar_cmd->add_option("--lambda", lambda_text, "Closed expression for lambda")->required();
    grammar_cmd->add_option("-n", n, "Number of samples")->check(CLI::PositiveNumber);
    grammar_cmd->add_option("--seed", seed, "Seed (default: $BUFFON_SEED)");
    grammar_cmd->add_flag("--json", as_json, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            const auto e = parse(expr_text);
            const ExprPtr binding = at_text.empty() ? nullptr : parse(at_text);
            const auto v = oracle_value(*e, binding);
            json out{{"expr", print(*e)}, {"binding", binding ? print(*binding) : ""},
                     {"value", v.value}, {"error_bound", v.error_bound}};
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (sample->parsed()) {
            const auto e = parse(expr_text);
            const ExprPtr binding = at_text.empty() ? nullptr : parse(at_text);
            if (has_free_var(*e) && !binding) throw ExprError("expression uses x; give --at");
            RunOptions opts;
            opts.n = n;
            opts.seed = seed;
            opts.workers = workers;
            if (budget) opts.budget = budget;
            const auto* weak = weak_match(*e);
            if (weak) {
                std::fprintf(stderr,
                             "warning: %s has infinite expected cost; the mean is unstable, read median/p95\n",
                             weak->name.c_str());
            }
            const auto stats = run(*e, binding, opts);
            const auto oracle = try_oracle(*e, binding);
            const std::string binding_text = binding ? print(*binding) : "";
            if (as_json) {
                std::cout << run_json(print(*e), binding_text, stats, oracle).dump(2) << '\n';
            } else if (as_csv) {
                std::cout << flips_csv(stats);
            } else {
                print_human(print(*e), binding_text, stats, oracle, weak != nullptr);
            }
            return 0;
        }
        if (dist->parsed()) {
            const auto kind = dist_kind_from_string(kind_text);
            if (!kind) throw std::invalid_argument("unknown distribution '" + kind_text + "'");
            const auto lam = parse(lambda_text);
            const auto h = buffon::dist(*kind, lam, n, seed);
            std::cout << dist_json(print(*lam), h).dump(2) << '\n';
            return 0;
        }
        if (pgf->parsed()) {
            const auto cls = perm_class_from_string(class_text);
            if (!cls) throw std::invalid_argument("unknown class '" + class_text + "'");
            const auto lam = parse_rational(lambda_text);
            const auto series = cost_pgf(*cls, lam, order);
            std::cout << pgf_json(std::string(to_string(*cls)), lam, series).dump(2) << '\n';
            return 0;
        }
        if (named_cmd->parsed()) {
            if (name_text == "list") {
                for (const auto& m : named_machines()) {
                    std::printf("%-18s %-5s %s\n", m.name.c_str(), m.weak ? "weak" : "", m.description.c_str());
                }
                return 0;
            }
            const auto e = named(name_text);
            const auto* m = find_named(name_text);
            const auto v = oracle_value(*e, nullptr);
            json out{{"name", m->name}, {"description", m->description}, {"expr", print(*e)},
                     {"weak", m->weak}, {"oracle", v.value},
                     {"exact", m->exact ? json(*m->exact) : json(nullptr)}};
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (grammar_cmd->parsed()) {
            std::ifstream in(grammar_file);
            std::stringstream buf;
            buf << in.rdbuf();
            std::string stem = grammar_file;
            if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
            if (const auto dot = stem.find('.'); dot != std::string::npos) stem = stem.substr(0, dot);
            auto g = std::make_shared<const BistochGrammar>(BistochGrammar::parse(buf.str(), stem));
            const auto lam = parse(lambda_text);
            const auto e = ex::grammar(g, lam);
            RunOptions opts;
            opts.n = n;
            opts.seed = seed;
            const auto stats = run(*e, nullptr, opts);
            const auto oracle = try_oracle(*e, nullptr);
            if (as_json) {
                std::cout << run_json(print(*e), "", stats, oracle).dump(2) << '\n';
            } else {
                print_human(print(*e), "", stats, oracle, false);
            }
            return 0;
        }
    } catch (const ParseError& err) {
        std::fprintf(stderr, "parse error at %s\n", err.what());
        return 2;
    } catch (const GrammarError& err) {
        std::fprintf(stderr, "grammar error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
