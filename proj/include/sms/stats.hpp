#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sms::stats {

/// AB / MB / SD over independent runs.
struct SummaryStats {
    double mean = 0.0;   ///< AB
    double median = 0.0; ///< MB
    double sd = 0.0;     ///< sample standard deviation (n - 1); 0 for one run
    std::size_t count = 0;

    bool operator==(const SummaryStats&) const = default;
};

SummaryStats summarize(std::span<const double> finals);

enum class PMethod { exact, normal_approximation };

/// Which sample tends to hold the smaller values.
enum class Direction { a_lower, b_lower, none };

struct WilcoxonResult {
    double rank_sum = 0.0;    ///< sum of the pooled (mid)ranks of sample a
    double p_two_sided = 1.0;
    PMethod method = PMethod::exact;
    Direction direction = Direction::none;
};

/// Largest per-sample size for which the exact null distribution is used.
inline constexpr std::size_t kExactMaxSize = 12;

/// Pooled ranks with ties sharing their average rank (1-based).
std::vector<double> midranks(std::span<const double> pooled);

/// Two-sided Wilcoxon rank-sum test. The exact permutation distribution is
/// used when both samples have at most kExactMaxSize values and no value is
/// shared between the samples; otherwise a normal approximation with tie
/// correction and continuity correction.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p for a tie-free rank sum of m values out of m + n.
double exact_rank_sum_p(double rank_sum, std::size_t m, std::size_t n);

/// Normal-approximation two-sided p with tie correction term sum(t^3 - t).
double normal_rank_sum_p(double rank_sum, std::size_t m, std::size_t n, double tie_term);

} // namespace sms::stats
