#include "sms/search.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sms {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

} // namespace

void StateConfig::validate() const {
    if (!(in_unit(rho_lo) && in_unit(rho_hi) && rho_lo <= rho_hi))
        throw ConfigError("state: rho range must satisfy 0 <= rho_lo <= rho_hi <= 1");
    if (!(in_unit(beta) && in_unit(alpha) && in_unit(H)))
        throw ConfigError("state: beta, alpha and H must lie in [0, 1]");
}

void PhaseSchedule::validate() const {
    if (!(gas_frac > 0.0 && liquid_frac > 0.0 && solid_frac > 0.0))
        throw ConfigError("schedule: phase fractions must be positive");
    if (std::abs(gas_frac + liquid_frac + solid_frac - 1.0) > 1e-12)
        throw ConfigError("schedule: phase fractions must sum to 1");
    gas.validate();
    liquid.validate();
    solid.validate();
}

std::size_t PhaseSchedule::gas_end(std::size_t gen) const {
    return static_cast<std::size_t>(std::floor(gas_frac * static_cast<double>(gen)));
}

std::size_t PhaseSchedule::liquid_end(std::size_t gen) const {
    // 0.5 + 0.4 is not exactly 0.9 in binary; snap to the nearest 1e-12 so
    // that e.g. gen = 10 ends the liquid phase at k = 9.
    double frac = gas_frac + liquid_frac;
    frac = std::round(frac * 1e12) / 1e12;
    return static_cast<std::size_t>(std::floor(frac * static_cast<double>(gen)));
}

void SmsParams::validate() const {
    if (np < 2)
        throw ConfigError("sms: population size must be at least 2");
    if (gen < 1)
        throw ConfigError("sms: gen must be at least 1");
    schedule.validate();
}

double compute_v_init(const Bounds& bounds, double beta) { return bounds.mean_width() * beta; }

double compute_collision_radius(const Bounds& bounds, double alpha) {
    return bounds.mean_width() * alpha;
}

Vector attraction_unit_vector(std::span<const double> p, std::span<const double> p_best) {
    if (p.size() != p_best.size())
        throw DimensionError("attraction: position lengths differ");
    Vector a(p.size());
    double norm2 = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        a[j] = p_best[j] - p[j];
        norm2 += a[j] * a[j];
    }
    const double norm = std::sqrt(norm2);
    if (norm < kAttractionEpsilon) {
        std::fill(a.begin(), a.end(), 0.0);
        return a;
    }
    for (auto& v : a)
        v /= norm;
    return a;
}

Vector update_direction(std::span<const double> d, std::span<const double> a, std::size_t k,
                        std::size_t gen) {
    if (d.size() != a.size())
        throw DimensionError("direction: lengths differ");
    const double decay = (1.0 - static_cast<double>(k) / static_cast<double>(gen)) * 0.5;
    Vector out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
        out[j] = d[j] * decay + a[j];
    return out;
}

void move_molecule(Molecule& m, double v_init, const StateConfig& cfg, const Bounds& bounds,
                   RandomStream& rng, RhoSampling rho_sampling) {
    const std::size_t n = bounds.dim();
    double rho = 0.0;
    if (rho_sampling == RhoSampling::per_molecule)
        rho = rng.uniform(cfg.rho_lo, cfg.rho_hi);
    for (std::size_t j = 0; j < n; ++j) {
        const double velocity = m.direction[j] * v_init;
        const double r = rng.uniform();
        if (rho_sampling == RhoSampling::per_dimension)
            rho = rng.uniform(cfg.rho_lo, cfg.rho_hi);
        m.position[j] += velocity * r * rho * bounds.width(j);
    }
    clamp_in_place(m.position, bounds);
}

std::size_t apply_collisions(Population& pop, double r) {
    if (r <= 0.0)
        return 0;
    const double r2 = r * r;
    std::size_t swaps = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        for (std::size_t q = i + 1; q < pop.size(); ++q) {
            const auto& pi = pop[i].position;
            const auto& pq = pop[q].position;
            double dist2 = 0.0;
            for (std::size_t j = 0; j < pi.size(); ++j) {
                const double diff = pi[j] - pq[j];
                dist2 += diff * diff;
            }
            if (dist2 < r2) {
                std::swap(pop[i].direction, pop[q].direction);
                ++swaps;
            }
        }
    }
    return swaps;
}

std::size_t apply_random_positions(Population& pop, double H, const Bounds& bounds,
                                   RandomStream& rng) {
    std::size_t regenerated = 0;
    for (auto& m : pop.molecules) {
        if (rng.uniform() < H) {
            m.position = random_position(bounds, rng);
            ++regenerated;
        }
    }
    return regenerated;
}

BestRecord update_best(const std::optional<BestRecord>& best, const Population& pop,
                       std::span<const double> values) {
    const std::size_t c = argmin(values);
    if (!best || values[c] < best->value)
        return BestRecord{pop[c].position, values[c]};
    return *best;
}

Phase phase_for_iteration(std::size_t k, std::size_t gen, const PhaseSchedule& schedule) {
    if (k < 1 || k > gen)
        throw std::out_of_range("iteration k must satisfy 1 <= k <= gen");
    if (k <= schedule.gas_end(gen))
        return Phase::gas;
    if (k <= schedule.liquid_end(gen))
        return Phase::liquid;
    return Phase::solid;
}

const StateConfig& state_for_iteration(std::size_t k, std::size_t gen,
                                       const PhaseSchedule& schedule) {
    switch (phase_for_iteration(k, gen, schedule)) {
    case Phase::gas:
        return schedule.gas;
    case Phase::liquid:
        return schedule.liquid;
    case Phase::solid:
        break;
    }
    return schedule.solid;
}

SmsState init_sms_state(ObjectiveSpec& spec, std::size_t np, RandomStream& rng) {
    SmsState state;
    state.pop = init_population(spec.bounds, np, rng);
    state.values.resize(np);
    for (std::size_t i = 0; i < np; ++i)
        state.values[i] = evaluate(spec, state.pop[i].position, rng);
    state.best = update_best(std::nullopt, state.pop, state.values);
    return state;
}

IterationStats sms_iteration(SmsState& state, const StateConfig& cfg, std::size_t k,
                             std::size_t gen, ObjectiveSpec& spec, RandomStream& rng,
                             RhoSampling rho_sampling) {
    IterationStats stats;
    const std::uint64_t draws_before = rng.draws();
    const Bounds& bounds = spec.bounds;

    // Attraction target is the current population's best, not the historical one.
    const Vector leader = state.pop[argmin(state.values)].position;

    const double v_init = compute_v_init(bounds, cfg.beta);
    const double radius = compute_collision_radius(bounds, cfg.alpha);

    for (auto& m : state.pop.molecules) {
        const Vector a = attraction_unit_vector(m.position, leader);
        m.direction = update_direction(m.direction, a, k, gen);
        move_molecule(m, v_init, cfg, bounds, rng, rho_sampling);
    }

    stats.swaps = apply_collisions(state.pop, radius);
    stats.regenerated = apply_random_positions(state.pop, cfg.H, bounds, rng);

    for (std::size_t i = 0; i < state.pop.size(); ++i)
        state.values[i] = evaluate(spec, state.pop[i].position, rng);
    state.best = update_best(state.best, state.pop, state.values);

    stats.draws = rng.draws() - draws_before;
    return stats;
}

RunResult run_sms(ObjectiveSpec spec, const SmsParams& params, std::uint64_t seed) {
    params.validate();
    RandomStream rng(seed);
    SmsState state = init_sms_state(spec, params.np, rng);

    RunResult result;
    result.seed = seed;
    result.trace.reserve(params.gen);
    for (std::size_t k = 1; k <= params.gen; ++k) {
        const StateConfig& cfg = state_for_iteration(k, params.gen, params.schedule);
        sms_iteration(state, cfg, k, params.gen, spec, rng, params.rho_sampling);
        result.trace.push_back(state.best.value);
    }
    result.best = std::move(state.best);
    result.evaluations = spec.eval_count;
    result.non_finite = spec.saw_non_finite;
    return result;
}

} // namespace sms
