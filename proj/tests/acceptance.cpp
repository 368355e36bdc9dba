// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include "sms/benchmarks.hpp"
#include "sms/harness.hpp"
#include "sms/search.hpp"
#include "sms/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace sms;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (failures++ < 5)
                detail << " [failed: " << what << "]";
        }
    }

private:
    int failures = 0;
};

int failed_criteria = 0;

void report(int number, const std::string& title, const Outcome& o, double seconds) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << title
              << "):" << o.detail.str() << " (" << harness::format_value(seconds).substr(0, 5)
              << " s)" << std::endl;
    if (!o.pass)
        ++failed_criteria;
}

template <typename F>
void criterion(int number, const std::string& title, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report(number, title, o, dt.count());
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

/// Runs the default protocol (30 runs, Np = 50, default budgets) for
/// the given benchmarks and optimizers.
harness::ExperimentReport protocol(const std::vector<std::string>& benchmarks,
                                   const std::vector<std::string>& optimizers) {
    nlohmann::json doc;
    doc["benchmarks"] = benchmarks;
    doc["optimizers"] = optimizers;
    doc["base_seed"] = 20240101;
    return harness::run_experiment(harness::parse_config(doc), harness::Execution::parallel);
}

double ab(const harness::ExperimentReport& r, const std::string& opt, const std::string& b) {
    return r.find(opt, b)->summary->mean;
}

// Null distribution of the rank sum of m ranks out of 1..m+n, by walking
// every subset. Index = rank sum.
std::vector<double> enumerate_rank_sums(std::size_t m, std::size_t n) {
    const std::size_t total = m + n;
    std::vector<double> hist(total * (total + 1) / 2 + 1, 0.0);
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
    do {
        std::size_t s = 0;
        for (std::size_t i = 0; i < total; ++i)
            if (pick[i])
                s += i + 1;
        hist[s] += 1.0;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return hist;
}

double p_from_hist(const std::vector<double>& hist, std::size_t w) {
    double le = 0, ge = 0, all = 0;
    for (std::size_t s = 0; s < hist.size(); ++s) {
        all += hist[s];
        if (s <= w)
            le += hist[s];
        if (s >= w)
            ge += hist[s];
    }
    return std::min(1.0, 2.0 * std::min(le, ge) / all);
}

Vector shifted(const Vector& base, const Vector& delta) {
    Vector x(base.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = base[j] + delta[j];
    return x;
}

} // namespace

int main() {
    std::cout.setf(std::ios::unitbuf);

    criterion(1, "unimodal quality", [](Outcome& o) {
        const auto r = protocol({"f1", "f2"}, {"sms"});
        const double f1 = ab(r, "sms", "f1"), f2 = ab(r, "sms", "f2");
        o.detail << " f1 AB=" << fmt(f1) << " (target <= 1e-8), f2 AB=" << fmt(f2)
                 << " (target <= 0.1)";
        o.require(f1 <= 1e-8, "f1");
        o.require(f2 <= 0.1, "f2");
    });

    criterion(2, "multimodal quality", [](Outcome& o) {
        const auto r = protocol({"f7", "f11"}, {"sms"});
        const double f7 = ab(r, "sms", "f7"), f11 = ab(r, "sms", "f11");
        o.detail << " f7 AB=" << fmt(f7) << " (target <= 0.05), f11 AB=" << fmt(f11)
                 << " (target <= 0.6)";
        o.require(f7 <= 0.05, "f7");
        o.require(f11 <= 0.6, "f11");
    });

    criterion(3, "fixed-dimension quality", [](Outcome& o) {
        const auto r = protocol({"f13", "f12"}, {"sms"});
        const double f13 = ab(r, "sms", "f13"), f12 = ab(r, "sms", "f12");
        o.detail << " f13 AB=" << fmt(f13) << " (target <= -3.20), f12 AB=" << fmt(f12)
                 << " (target <= 0.01)";
        o.require(r.find("sms", "f13")->gen == 500, "f13 budget is 500");
        o.require(f13 <= -3.20, "f13");
        o.require(f12 <= 0.01, "f12");
    });

    criterion(4, "comparative dominance", [](Outcome& o) {
        const auto r = protocol({"f1", "f3"}, {"sms", "pso", "de"});
        for (const auto& cmp : r.comparisons) {
            const double a = ab(r, "sms", cmp.benchmark);
            const double b = ab(r, cmp.baseline, cmp.benchmark);
            const bool sms_lower = cmp.result.direction == stats::Direction::a_lower;
            const double ma = r.find("sms", cmp.benchmark)->summary->median;
            const double mb = r.find(cmp.baseline, cmp.benchmark)->summary->median;
            o.detail << ' ' << cmp.benchmark << " sms AB " << fmt(a) << " MB " << fmt(ma)
                     << " vs " << cmp.baseline << " AB " << fmt(b) << " MB " << fmt(mb)
                     << " p=" << fmt(cmp.result.p_two_sided) << ';';
            o.require(a < b, cmp.benchmark + " AB vs " + cmp.baseline);
            o.require(cmp.result.p_two_sided < 0.05 && sms_lower,
                      cmp.benchmark + " significance vs " + cmp.baseline);
        }
        o.require(r.comparisons.size() == 4, "four comparisons");
    });

    criterion(5, "Wilcoxon oracle equivalence", [](Outcome& o) {
        std::size_t checked = 0;
        double worst = 0.0;
        RandomStream rng(5);
        for (std::size_t m = 1; m <= stats::kExactMaxSize; ++m) {
            for (std::size_t n = 1; n <= stats::kExactMaxSize; ++n) {
                if (std::min(m, n) > 8)
                    continue;
                const auto hist = enumerate_rank_sums(m, n);
                const std::size_t lo = m * (m + 1) / 2, hi = lo + m * n;
                for (std::size_t w = lo; w <= hi; ++w) {
                    const double diff = std::abs(
                        stats::exact_rank_sum_p(static_cast<double>(w), m, n) - p_from_hist(hist, w));
                    worst = std::max(worst, diff);
                    ++checked;
                }
                // Full path through the public test on tie-free samples.
                for (int t = 0; t < 5; ++t) {
                    Vector a(m), b(n);
                    for (auto& v : a)
                        v = rng.uniform();
                    for (auto& v : b)
                        v = rng.uniform();
                    const auto res = stats::wilcoxon_rank_sum(a, b);
                    o.require(res.method == stats::PMethod::exact, "exact method chosen");
                    const double diff = std::abs(
                        res.p_two_sided -
                        p_from_hist(hist, static_cast<std::size_t>(std::lround(res.rank_sum))));
                    worst = std::max(worst, diff);
                    ++checked;
                }
            }
        }
        o.detail << ' ' << checked << " rank sums checked, max |diff|=" << fmt(worst)
                 << " (target <= 1e-12)";
        o.require(worst <= 1e-12, "max difference");
    });

    criterion(6, "operator property suite", [](Outcome& o) {
        // (a) phase proportions
        const PhaseSchedule sched;
        std::map<Phase, int> counts;
        for (std::size_t k = 1; k <= 1000; ++k)
            ++counts[phase_for_iteration(k, 1000, sched)];
        o.require(counts[Phase::gas] == 500 && counts[Phase::liquid] == 400 &&
                      counts[Phase::solid] == 100,
                  "(a) 500/400/100");

        // (b) trace monotonicity and (d) containment on 100 short runs
        RandomStream meta(606);
        const int ids[] = {1, 3, 5, 6, 7, 9, 15, 17, 21, 24};
        std::size_t monotone_violations = 0, escapes = 0;
        for (int t = 0; t < 100; ++t) {
            const int id = ids[t % 10];
            auto spec = bench::make_instance(id, 10, 1 + meta.index(1000));
            SmsParams p;
            p.np = 10;
            p.gen = 30;
            const auto r = run_sms(spec, p, 1000 + t);
            for (std::size_t k = 1; k < r.trace.size(); ++k)
                monotone_violations += r.trace[k] > r.trace[k - 1];

            RandomStream rng(5000 + t);
            auto st = init_sms_state(spec, p.np, rng);
            for (std::size_t k = 1; k <= p.gen; ++k) {
                sms_iteration(st, state_for_iteration(k, p.gen, sched), k, p.gen, spec, rng);
                for (const auto& m : st.pop.molecules)
                    escapes += !spec.bounds.contains(m.position);
            }
        }
        o.require(monotone_violations == 0, "(b) trace monotonicity");
        o.require(escapes == 0, "(d) bounds containment");

        // (c) collisions keep the multiset of directions
        std::size_t multiset_changes = 0, total_swaps = 0;
        const auto box = Bounds::uniform(4, -1, 1);
        for (int t = 0; t < 100; ++t) {
            auto pop = init_population(box, 15, meta);
            std::vector<Vector> before;
            for (const auto& m : pop.molecules)
                before.push_back(m.direction);
            total_swaps += apply_collisions(pop, 1.0);
            std::vector<Vector> after;
            for (const auto& m : pop.molecules)
                after.push_back(m.direction);
            std::sort(before.begin(), before.end());
            std::sort(after.begin(), after.end());
            multiset_changes += before != after;
        }
        o.require(multiset_changes == 0, "(c) direction multiset");
        o.require(total_swaps > 0, "(c) swaps exercised");

        // (e) bit-exact replay of a full f1 run
        const auto f1 = bench::make_instance(1, 30, 1);
        const auto r1 = run_sms(f1, SmsParams{}, 424242);
        const auto r2 = run_sms(f1, SmsParams{}, 424242);
        const bool replay = r1.trace == r2.trace && r1.best.position == r2.best.position &&
                            r1.best.value == r2.best.value && r1.evaluations == r2.evaluations;
        o.require(replay, "(e) replay");

        o.detail << " (a) " << counts[Phase::gas] << '/' << counts[Phase::liquid] << '/'
                 << counts[Phase::solid] << "; (b) " << monotone_violations
                 << " increases; (c) " << multiset_changes << " multiset changes over "
                 << total_swaps << " swaps; (d) " << escapes << " escapes; (e) replay "
                 << (replay ? "identical" : "differs");
    });

    criterion(7, "benchmark sanity suite", [](Outcome& o) {
        RandomStream rng(7);
        struct Check {
            int id;
            double tol;
        };
        const Check checks[] = {{1, 1e-6},  {2, 1e-6},  {3, 1e-6},  {6, 1e-6},  {7, 1e-6},
                                {9, 1e-6},  {10, 1e-6}, {11, 1e-6}, {18, 1e-6}, {21, 1e-6},
                                {23, 1e-6}, {5, 1e-3},  {13, 1e-3}};
        double worst_gap = 0.0;
        for (const auto& c : checks) {
            const auto inst = bench::generate_instance(c.id, bench::default_dimension(c.id), 1);
            const auto x = bench::known_optimizer(inst);
            if (!x) {
                o.require(false, bench::id_name(c.id) + " optimizer");
                continue;
            }
            const double gap = std::abs(bench::evaluate_instance(inst, *x, rng) - inst.f_opt);
            worst_gap = std::max(worst_gap, gap);
            o.require(gap <= c.tol, bench::id_name(c.id) + " optimum gap " + fmt(gap));
        }
        o.require(bench::t_osz(Vector{0.0})[0] == 0.0, "t_osz(0) = 0");
        o.require(bench::t_osz(Vector{1.0})[0] == 1.0, "t_osz(1) = 1");

        // eval(s + delta) against the same function with a zero shift.
        std::ostringstream cov;
        for (int id : {18, 19, 21, 22, 23}) {
            const auto inst = bench::generate_instance(id, 30, 1);
            auto base = inst;
            std::fill(base.shift.begin(), base.shift.end(), 0.0);
            std::fill(base.vector_b.begin(), base.vector_b.end(), 0.0);
            const auto box = bench::bounds_for(id, 30);
            double worst = 0.0;
            for (int t = 0; t < 20; ++t) {
                Vector delta(30);
                for (std::size_t j = 0; j < 30; ++j)
                    delta[j] = rng.uniform(-0.1, 0.1) * box.width(j);
                const double a = bench::evaluate_instance(inst, shifted(inst.shift, delta), rng);
                const double b = bench::evaluate_instance(base, delta, rng);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
            cov << ' ' << bench::id_name(id) << '=' << fmt(worst);
            o.require(worst <= 1e-9, bench::id_name(id) + " shift covariance");
        }
        o.detail << " worst optimum gap " << fmt(worst_gap) << "; shift covariance rel. error"
                 << cov.str() << " (target <= 1e-9)";
    });

    criterion(8, "solid-state purity", [](Outcome& o) {
        RandomStream rng(8);
        std::size_t swaps = 0, regenerated = 0, bad_draws = 0;
        for (int t = 0; t < 100; ++t) {
            const std::size_t np = 2 + rng.index(40), n = 2 + rng.index(29);
            auto spec = bench::make_instance(1, n, 1);
            auto st = init_sms_state(spec, np, rng);
            // Crowd half of the populations so that a collision would trigger.
            if (t % 2 == 0)
                for (auto& m : st.pop.molecules)
                    m.position = st.pop[0].position;
            const auto s = sms_iteration(st, kSolidState, 1, 1, spec, rng);
            swaps += s.swaps;
            regenerated += s.regenerated;
            bad_draws += s.draws != np * n * 2 + np;
        }
        o.detail << ' ' << swaps << " swaps, " << regenerated << " regenerations over 100 populations";
        o.require(swaps == 0, "swaps");
        o.require(regenerated == 0, "regenerations");
        o.require(bad_draws == 0, "draw count");
    });

    std::cout << (failed_criteria == 0 ? "ALL CRITERIA PASS"
                                       : std::to_string(failed_criteria) + " criteria FAIL")
              << std::endl;
    return failed_criteria == 0 ? 0 : 1;
}
