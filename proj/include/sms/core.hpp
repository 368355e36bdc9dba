#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sms {

using Vector = std::vector<double>;

/// Raised for invalid parameters, bounds, or experiment configurations.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when vector lengths disagree with the problem dimension.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Box constraints. low[j] < high[j] for every dimension.
class Bounds {
public:
    Bounds(Vector low, Vector high);

    /// Same interval [lo, hi] in each of n dimensions.
    static Bounds uniform(std::size_t n, double lo, double hi);

    std::size_t dim() const noexcept { return low_.size(); }
    const Vector& low() const noexcept { return low_; }
    const Vector& high() const noexcept { return high_; }
    double width(std::size_t j) const { return high_[j] - low_[j]; }

    /// Mean of the per-dimension widths.
    double mean_width() const;

    bool contains(std::span<const double> x) const;

    bool operator==(const Bounds&) const = default;

private:
    Vector low_;
    Vector high_;
};

struct Molecule {
    Vector position;
    Vector direction;
};

struct Population {
    std::vector<Molecule> molecules;

    std::size_t size() const noexcept { return molecules.size(); }
    Molecule& operator[](std::size_t i) { return molecules[i]; }
    const Molecule& operator[](std::size_t i) const { return molecules[i]; }
};

/// Best-so-far solution (minimization).
struct BestRecord {
    Vector position;
    double value = 0.0;
};

/// Seedable uniform/normal source with a fixed draw order.
///
/// The default generator is a 64-bit Mersenne twister. Uniforms take the top
/// 53 bits of one engine output, so a stream is bit-reproducible across
/// platforms for a given seed. Every draw goes through `next_uniform`, which
/// subclasses may override to replay a scripted sequence in tests.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);
    virtual ~RandomStream() = default;

    RandomStream(const RandomStream&) = default;
    RandomStream& operator=(const RandomStream&) = default;

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform in [0, 1).
    double uniform() {
        ++draws_;
        return next_uniform();
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    /// Uniform integer in [0, n). Consumes one uniform draw.
    std::size_t index(std::size_t n);

    /// Standard normal via Box-Muller. Consumes exactly two uniform draws.
    double standard_normal();

    /// Number of uniform draws consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

protected:
    virtual double next_uniform();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

/// Objective function signature. The stream is only consumed by noisy functions.
using ObjectiveFn = std::function<double(std::span<const double>, RandomStream&)>;

/// A minimization problem over a box. Copy one per run: the evaluation
/// counter and the non-finite flag belong to the run that owns the copy.
struct ObjectiveSpec {
    std::string id;
    std::size_t n = 0;
    Bounds bounds;
    ObjectiveFn fn;
    std::optional<double> f_opt;
    std::optional<Vector> x_opt;
    std::uint64_t eval_count = 0;
    bool saw_non_finite = false;
};

/// Np molecules with positions uniform in the box and directions uniform in
/// [-1, 1]. All position draws come first, molecule-major, then all direction
/// draws in the same order.
Population init_population(const Bounds& bounds, std::size_t np, RandomStream& rng);

/// A uniformly random point in the box (n draws, dimension order).
Vector random_position(const Bounds& bounds, RandomStream& rng);

Vector clamp_to_bounds(std::span<const double> x, const Bounds& bounds);
void clamp_in_place(std::span<double> x, const Bounds& bounds);

/// Evaluates `x`, bumps `spec.eval_count`, and flags non-finite results.
double evaluate(ObjectiveSpec& spec, std::span<const double> x, RandomStream& rng);

/// Index of the smallest value; NaN never wins and ties go to the lowest index.
std::size_t argmin(std::span<const double> values);

} // namespace sms
