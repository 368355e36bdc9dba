#include "sms/baselines.hpp"

#include <utility>

namespace sms {

void PsoParams::validate() const {
    if (np < 2)
        throw ConfigError("pso: population size must be at least 2");
    if (gen < 1)
        throw ConfigError("pso: gen must be at least 1");
    if (!(c1 > 0.0 && c2 > 0.0))
        throw ConfigError("pso: c1 and c2 must be positive");
    if (!(w_start >= w_end))
        throw ConfigError("pso: w_start must not be below w_end");
}

void DeParams::validate() const {
    if (np < 4)
        throw ConfigError("de: rand/1 needs a population of at least 4");
    if (gen < 1)
        throw ConfigError("de: gen must be at least 1");
    if (!(cr >= 0.0 && cr <= 1.0))
        throw ConfigError("de: CR must lie in [0, 1]");
    if (!(f >= 0.0))
        throw ConfigError("de: F must be non-negative");
}

double pso_inertia(const PsoParams& params, std::size_t k) {
    if (params.gen <= 1)
        return params.w_start;
    const double t = static_cast<double>(k - 1) / static_cast<double>(params.gen - 1);
    return params.w_start - (params.w_start - params.w_end) * t;
}

RunResult run_pso(ObjectiveSpec spec, const PsoParams& params, std::uint64_t seed) {
    params.validate();
    RandomStream rng(seed);
    const Bounds& bounds = spec.bounds;
    const std::size_t n = bounds.dim();
    const std::size_t np = params.np;

    std::vector<Vector> x(np), v(np, Vector(n, 0.0)), pbest(np);
    Vector pbest_val(np);
    for (std::size_t i = 0; i < np; ++i)
        x[i] = random_position(bounds, rng);
    for (std::size_t i = 0; i < np; ++i) {
        pbest[i] = x[i];
        pbest_val[i] = evaluate(spec, x[i], rng);
    }
    std::size_t g = argmin(pbest_val);
    BestRecord best{pbest[g], pbest_val[g]};

    RunResult result;
    result.seed = seed;
    result.trace.reserve(params.gen);
    for (std::size_t k = 1; k <= params.gen; ++k) {
        const double w = pso_inertia(params, k);
        for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                v[i][j] = w * v[i][j] + params.c1 * r1 * (pbest[i][j] - x[i][j]) +
                          params.c2 * r2 * (best.position[j] - x[i][j]);
                x[i][j] += v[i][j];
            }
            clamp_in_place(x[i], bounds);
        }
        for (std::size_t i = 0; i < np; ++i) {
            const double val = evaluate(spec, x[i], rng);
            if (val < pbest_val[i]) {
                pbest_val[i] = val;
                pbest[i] = x[i];
            }
        }
        g = argmin(pbest_val);
        if (pbest_val[g] < best.value)
            best = BestRecord{pbest[g], pbest_val[g]};
        result.trace.push_back(best.value);
    }
    result.best = std::move(best);
    result.evaluations = spec.eval_count;
    result.non_finite = spec.saw_non_finite;
    return result;
}

RunResult run_de(ObjectiveSpec spec, const DeParams& params, std::uint64_t seed) {
    params.validate();
    RandomStream rng(seed);
    const Bounds& bounds = spec.bounds;
    const std::size_t n = bounds.dim();
    const std::size_t np = params.np;

    std::vector<Vector> pop(np);
    Vector val(np);
    for (std::size_t i = 0; i < np; ++i)
        pop[i] = random_position(bounds, rng);
    for (std::size_t i = 0; i < np; ++i)
        val[i] = evaluate(spec, pop[i], rng);
    std::size_t g = argmin(val);
    BestRecord best{pop[g], val[g]};

    RunResult result;
    result.seed = seed;
    result.trace.reserve(params.gen);
    Vector trial(n);
    for (std::size_t k = 1; k <= params.gen; ++k) {
        for (std::size_t i = 0; i < np; ++i) {
            std::size_t r1, r2, r3;
            do {
                r1 = rng.index(np);
            } while (r1 == i);
            do {
                r2 = rng.index(np);
            } while (r2 == i || r2 == r1);
            do {
                r3 = rng.index(np);
            } while (r3 == i || r3 == r1 || r3 == r2);
            const std::size_t j_rand = rng.index(n);

            for (std::size_t j = 0; j < n; ++j) {
                const bool cross = rng.uniform() < params.cr || j == j_rand;
                trial[j] = cross ? pop[r1][j] + params.f * (pop[r2][j] - pop[r3][j]) : pop[i][j];
            }
            clamp_in_place(trial, bounds);
            const double tv = evaluate(spec, trial, rng);
            if (tv <= val[i]) {
                pop[i] = trial;
                val[i] = tv;
            }
        }
        g = argmin(val);
        if (val[g] < best.value)
            best = BestRecord{pop[g], val[g]};
        result.trace.push_back(best.value);
    }
    result.best = std::move(best);
    result.evaluations = spec.eval_count;
    result.non_finite = spec.saw_non_finite;
    return result;
}

} // namespace sms
