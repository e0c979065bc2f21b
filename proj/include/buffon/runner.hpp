#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "buffon/expr.hpp"
#include "buffon/perm_class.hpp"

namespace buffon {

using CountMap = std::map<std::uint64_t, std::uint64_t>;

struct FlipSummary {
    double mean = 0.0;
    std::uint64_t median = 0;
    std::uint64_t p95 = 0;
    std::uint64_t max = 0;
};

/// Aggregate of n Bernoulli samples.
///
/// Censored samples (budget exhausted) count toward n but never toward
/// successes, and enter the flip histogram at the cost spent before the cut.
struct RunStats {
    std::uint64_t n = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    std::array<double, 2> ci95{0.0, 0.0};
    FlipSummary flips;
    std::uint64_t censored = 0;
    std::uint64_t seed = 0;
    CountMap flip_histogram;  ///< flips -> number of samples
};

struct RunOptions {
    std::uint64_t n = 100000;
    std::uint64_t seed = 0x5eed;
    std::optional<std::uint64_t> budget;
    /// Worker w draws from BitSource(seed + w). One worker is the determinism reference.
    unsigned workers = 1;
};

/// Wilson score interval at 95%.
std::array<double, 2> wilson_interval(std::uint64_t successes, std::uint64_t n);

/// Smallest value whose cumulative count reaches ceil(q * total).
std::uint64_t histogram_quantile(const CountMap& counts, double q);

/// Recompute p_hat, ci95 and the flip summary from the counts.
void finalize(RunStats& stats);

/// Exact merge: counts add, derived fields are recomputed. The seed of `a` is kept.
RunStats merge(const RunStats& a, const RunStats& b);

RunStats run(const Expr& e, const ExprPtr& binding, const RunOptions& opts);

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square of integer observations against `pmf`. Bins cover
/// values from 0 up to the point where the reference law has 1% left, plus
/// one tail bin; adjacent bins are merged until each expects at least 5.
ChiSquare chi_square(const CountMap& observed, std::uint64_t n,
                     const std::function<double(std::uint64_t)>& pmf);

enum class DistKind { Poisson, Logarithmic, Geometric };

std::optional<DistKind> dist_kind_from_string(std::string_view name);
std::string_view to_string(DistKind k);
PermClass dist_class(DistKind k);
/// Reference law of the kind at lam: e^-lam lam^r / r!, lam^r / (r L), lam^r (1 - lam).
double dist_pmf(DistKind k, double lam, std::uint64_t r);

struct Histogram {
    DistKind kind = DistKind::Poisson;
    double lambda = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    CountMap bins;
    ChiSquare chi;
    double mean_trials = 0.0;  ///< average schema iterations per variate
    double mean_flips = 0.0;
};

Histogram dist(DistKind kind, const ExprPtr& lam, std::uint64_t n, std::uint64_t seed);

}  // namespace buffon
