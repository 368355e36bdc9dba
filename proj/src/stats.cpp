#include "sms/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sms::stats {

SummaryStats summarize(std::span<const double> finals) {
    if (finals.empty())
        throw std::invalid_argument("summarize: no values");
    for (double v : finals) {
        if (!std::isfinite(v))
            throw std::invalid_argument("summarize: non-finite value");
    }

    SummaryStats s;
    s.count = finals.size();
    const auto n = static_cast<double>(s.count);
    s.mean = std::accumulate(finals.begin(), finals.end(), 0.0) / n;

    std::vector<double> sorted(finals.begin(), finals.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = s.count / 2;
    s.median = s.count % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    if (s.count > 1) {
        double ss = 0.0;
        for (double v : finals)
            ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / (n - 1.0));
    }
    return s;
}

std::vector<double> midranks(std::span<const double> pooled) {
    const std::size_t N = pooled.size();
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    std::vector<double> ranks(N);
    std::size_t i = 0;
    while (i < N) {
        std::size_t j = i + 1;
        while (j < N && pooled[order[j]] == pooled[order[i]])
            ++j;
        // positions i..j-1 hold ranks i+1..j
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

double exact_rank_sum_p(double rank_sum, std::size_t m, std::size_t n) {
    const std::size_t N = m + n;
    const std::size_t max_sum = N * (N + 1) / 2;

    // ways[k][s]: number of k-subsets of {1..r} with sum s, built over r.
    std::vector<std::vector<double>> ways(m + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t r = 1; r <= N; ++r) {
        for (std::size_t k = std::min(r, m); k >= 1; --k) {
            for (std::size_t s = max_sum; s >= r; --s)
                ways[k][s] += ways[k - 1][s - r];
        }
    }

    const auto w = static_cast<std::size_t>(std::llround(rank_sum));
    double total = 0.0, lower = 0.0, upper = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        const double c = ways[m][s];
        total += c;
        if (s <= w)
            lower += c;
        if (s >= w)
            upper += c;
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

double normal_rank_sum_p(double rank_sum, std::size_t m, std::size_t n, double tie_term) {
    const auto dm = static_cast<double>(m);
    const auto dn = static_cast<double>(n);
    const double N = dm + dn;
    const double mu = dm * (N + 1.0) / 2.0;
    const double var = dm * dn / 12.0 * ((N + 1.0) - tie_term / (N * (N - 1.0)));
    if (!(var > 0.0))
        return 1.0;
    const double z = std::max(0.0, std::abs(rank_sum - mu) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wilcoxon: both samples must be non-empty");

    const std::size_t m = a.size();
    const std::size_t n = b.size();
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    WilcoxonResult res;
    res.rank_sum = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(m), 0.0);

    // Tie groups: sum(t^3 - t), and whether any group has members from both samples.
    std::vector<std::size_t> order(m + n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
    double tie_term = 0.0;
    bool cross_ties = false;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        bool from_a = order[i] < m, from_b = order[i] >= m;
        while (j < order.size() && pooled[order[j]] == pooled[order[i]]) {
            from_a |= order[j] < m;
            from_b |= order[j] >= m;
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        cross_ties |= from_a && from_b;
        i = j;
    }

    const double mu = static_cast<double>(m) * static_cast<double>(m + n + 1) / 2.0;
    if (res.rank_sum < mu)
        res.direction = Direction::a_lower;
    else if (res.rank_sum > mu)
        res.direction = Direction::b_lower;

    if (m <= kExactMaxSize && n <= kExactMaxSize && !cross_ties) {
        res.method = PMethod::exact;
        res.p_two_sided = exact_rank_sum_p(res.rank_sum, m, n);
    } else {
        res.method = PMethod::normal_approximation;
        res.p_two_sided = normal_rank_sum_p(res.rank_sum, m, n, tie_term);
    }
    return res;
}

} // namespace sms::stats
