#include "sms/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sms {

Bounds::Bounds(Vector low, Vector high) : low_(std::move(low)), high_(std::move(high)) {
    if (low_.empty())
        throw ConfigError("bounds: dimension must be at least 1");
    if (low_.size() != high_.size())
        throw ConfigError("bounds: low and high have different lengths");
    for (std::size_t j = 0; j < low_.size(); ++j) {
        if (!(low_[j] < high_[j]))
            throw ConfigError("bounds: low[" + std::to_string(j) + "] must be below high");
    }
}

Bounds Bounds::uniform(std::size_t n, double lo, double hi) {
    return Bounds(Vector(n, lo), Vector(n, hi));
}

double Bounds::mean_width() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < dim(); ++j)
        sum += width(j);
    return sum / static_cast<double>(dim());
}

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != dim())
        return false;
    for (std::size_t j = 0; j < dim(); ++j) {
        if (!(x[j] >= low_[j] && x[j] <= high_[j]))
            return false;
    }
    return true;
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomStream::next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RandomStream::index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return std::min(i, n - 1);
}

double RandomStream::standard_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector random_position(const Bounds& bounds, RandomStream& rng) {
    Vector x(bounds.dim());
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = bounds.low()[j] + rng.uniform() * bounds.width(j);
    return x;
}

Population init_population(const Bounds& bounds, std::size_t np, RandomStream& rng) {
    if (np < 2)
        throw ConfigError("population size must be at least 2");

    Population pop;
    pop.molecules.resize(np);
    for (auto& m : pop.molecules)
        m.position = random_position(bounds, rng);
    for (auto& m : pop.molecules) {
        m.direction.resize(bounds.dim());
        for (auto& d : m.direction)
            d = rng.uniform(-1.0, 1.0);
    }
    return pop;
}

void clamp_in_place(std::span<double> x, const Bounds& bounds) {
    if (x.size() != bounds.dim())
        throw DimensionError("clamp: position length does not match bounds");
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = std::min(bounds.high()[j], std::max(bounds.low()[j], x[j]));
}

Vector clamp_to_bounds(std::span<const double> x, const Bounds& bounds) {
    Vector y(x.begin(), x.end());
    clamp_in_place(y, bounds);
    return y;
}

double evaluate(ObjectiveSpec& spec, std::span<const double> x, RandomStream& rng) {
    if (x.size() != spec.n)
        throw DimensionError("evaluate: expected dimension " + std::to_string(spec.n) + ", got " +
                             std::to_string(x.size()));
    ++spec.eval_count;
    const double value = spec.fn(x, rng);
    if (!std::isfinite(value))
        spec.saw_non_finite = true;
    return value;
}

std::size_t argmin(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best] || (std::isnan(values[best]) && !std::isnan(values[i])))
            best = i;
    }
    return best;
}

} // namespace sms
