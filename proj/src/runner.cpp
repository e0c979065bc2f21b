#include "buffon/runner.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "buffon/oracle.hpp"
#include "buffon/sampler.hpp"
#include "buffon/von_neumann.hpp"

namespace buffon {

std::array<double, 2> wilson_interval(std::uint64_t successes, std::uint64_t n) {
    if (n == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
    return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

std::uint64_t histogram_quantile(const CountMap& counts, double q) {
    std::uint64_t total = 0;
    for (const auto& [v, c] : counts) total += c;
    if (total == 0) return 0;
    const auto target = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(total))));
    std::uint64_t seen = 0;
    for (const auto& [v, c] : counts) {
        seen += c;
        if (seen >= target) return v;
    }
    return counts.rbegin()->first;
}

void finalize(RunStats& s) {
    s.p_hat = s.n ? static_cast<double>(s.successes) / static_cast<double>(s.n) : 0.0;
    s.ci95 = wilson_interval(s.successes, s.n);
    long double total = 0;
    std::uint64_t count = 0;
    for (const auto& [v, c] : s.flip_histogram) {
        total += static_cast<long double>(v) * c;
        count += c;
    }
    s.flips.mean = count ? static_cast<double>(total / count) : 0.0;
    s.flips.median = histogram_quantile(s.flip_histogram, 0.5);
    s.flips.p95 = histogram_quantile(s.flip_histogram, 0.95);
    s.flips.max = s.flip_histogram.empty() ? 0 : s.flip_histogram.rbegin()->first;
}

RunStats merge(const RunStats& a, const RunStats& b) {
    RunStats out = a;
    out.n += b.n;
    out.successes += b.successes;
    out.censored += b.censored;
    for (const auto& [v, c] : b.flip_histogram) out.flip_histogram[v] += c;
    finalize(out);
    return out;
}

namespace {

RunStats run_single(const Expr& e, const ExprPtr& binding, std::uint64_t n, std::uint64_t seed,
                    std::optional<std::uint64_t> budget) {
    RunStats s;
    s.seed = seed;
    BitSource src(seed);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto r = sample_bernoulli(e, binding, src, budget);
        ++s.n;
        if (r.censored) {
            ++s.censored;
        } else {
            s.successes += r.value;
        }
        ++s.flip_histogram[r.flips];
    }
    finalize(s);
    return s;
}

}  // namespace

RunStats run(const Expr& e, const ExprPtr& binding, const RunOptions& opts) {
    if (opts.n == 0) throw std::invalid_argument("run needs n >= 1");
    const unsigned workers = std::max(1u, opts.workers);
    if (workers == 1) return run_single(e, binding, opts.n, opts.seed, opts.budget);

    std::vector<RunStats> parts(workers);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t share = opts.n / workers + (w < opts.n % workers ? 1 : 0);
        threads.emplace_back([&, w, share] {
            try {
                parts[w] = share ? run_single(e, binding, share, opts.seed + w, opts.budget) : RunStats{};
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    RunStats total = parts[0];
    for (unsigned w = 1; w < workers; ++w) total = merge(total, parts[w]);
    total.seed = opts.seed;
    return total;
}

ChiSquare chi_square(const CountMap& observed, std::uint64_t n,
                     const std::function<double(std::uint64_t)>& pmf) {
    const double nn = static_cast<double>(n);
    // Bins 0..last, then a tail bin holding the rest of the law.
    std::vector<double> expected;
    std::vector<double> seen;
    double cumulative = 0.0;
    std::uint64_t v = 0;
    while (cumulative < 0.99 && v < 100000) {
        const double p = pmf(v);
        cumulative += p;
        expected.push_back(p * nn);
        const auto it = observed.find(v);
        seen.push_back(it == observed.end() ? 0.0 : static_cast<double>(it->second));
        ++v;
    }
    double tail_seen = 0.0;
    for (auto it = observed.lower_bound(v); it != observed.end(); ++it) tail_seen += static_cast<double>(it->second);
    expected.push_back(std::max(0.0, 1.0 - cumulative) * nn);
    seen.push_back(tail_seen);

    std::vector<double> e_bins;
    std::vector<double> o_bins;
    double e_acc = 0.0;
    double o_acc = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        e_acc += expected[i];
        o_acc += seen[i];
        if (e_acc >= 5.0) {
            e_bins.push_back(e_acc);
            o_bins.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (e_bins.empty()) {
            e_bins.push_back(e_acc);
            o_bins.push_back(o_acc);
        } else {
            e_bins.back() += e_acc;
            o_bins.back() += o_acc;
        }
    }

    ChiSquare out;
    for (std::size_t i = 0; i < e_bins.size(); ++i) {
        if (e_bins[i] <= 0.0) continue;
        const double d = o_bins[i] - e_bins[i];
        out.statistic += d * d / e_bins[i];
    }
    out.dof = e_bins.size() > 1 ? e_bins.size() - 1 : 0;
    out.p_value = out.dof ? boost::math::gamma_q(out.dof / 2.0, out.statistic / 2.0) : 1.0;
    return out;
}

std::optional<DistKind> dist_kind_from_string(std::string_view name) {
    if (name == "poisson") return DistKind::Poisson;
    if (name == "logarithmic") return DistKind::Logarithmic;
    if (name == "geometric") return DistKind::Geometric;
    return std::nullopt;
}

std::string_view to_string(DistKind k) {
    switch (k) {
        case DistKind::Poisson: return "poisson";
        case DistKind::Logarithmic: return "logarithmic";
        case DistKind::Geometric: return "geometric";
    }
    return "?";
}

PermClass dist_class(DistKind k) {
    switch (k) {
        case DistKind::Poisson: return PermClass::Sorted;
        case DistKind::Logarithmic: return PermClass::RecordFirstMax;
        case DistKind::Geometric: return PermClass::All;
    }
    return PermClass::All;
}

double dist_pmf(DistKind k, double lam, std::uint64_t r) {
    const double rr = static_cast<double>(r);
    switch (k) {
        case DistKind::Poisson:
            return std::exp(-lam + rr * std::log(lam) - std::lgamma(rr + 1.0));
        case DistKind::Logarithmic:
            return r == 0 ? 0.0 : std::pow(lam, rr) / (rr * -std::log1p(-lam));
        case DistKind::Geometric:
            return std::pow(lam, rr) * (1.0 - lam);
    }
    return 0.0;
}

Histogram dist(DistKind kind, const ExprPtr& lam, std::uint64_t n, std::uint64_t seed) {
    if (!lam || has_free_var(*lam)) throw ExprError("dist needs a closed lambda");
    Histogram h;
    h.kind = kind;
    h.lambda = oracle_value(*lam, nullptr).value;
    if (!(h.lambda > 0.0 && h.lambda < 1.0)) throw std::domain_error("lambda must lie in (0,1)");
    h.n = n;
    h.seed = seed;
    BitSource src(seed);
    long double trials = 0;
    long double flips = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto s = vn_variate(dist_class(kind), *lam, nullptr, src);
        ++h.bins[s.result.value];
        trials += s.trials;
        flips += s.result.flips;
    }
    h.mean_trials = n ? static_cast<double>(trials / n) : 0.0;
    h.mean_flips = n ? static_cast<double>(flips / n) : 0.0;
    h.chi = chi_square(h.bins, n, [&](std::uint64_t r) { return dist_pmf(kind, h.lambda, r); });
    return h;
}

}  // namespace buffon
