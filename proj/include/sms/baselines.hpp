#pragma once

#include "sms/core.hpp"
#include "sms/search.hpp"

#include <cstdint>

namespace sms {

/// Global-best PSO with linearly decreasing inertia.
struct PsoParams {
    std::size_t np = 50;
    std::size_t gen = 1000;
    double c1 = 2.0;
    double c2 = 2.0;
    double w_start = 0.9;
    double w_end = 0.2;

    void validate() const;
};

/// DE/rand/1/bin.
struct DeParams {
    std::size_t np = 50;
    std::size_t gen = 1000;
    double cr = 0.9;
    double f = 0.8;

    void validate() const;
};

/// Inertia weight at iteration k (1-based): w_start at k = 1, w_end at k = gen.
double pso_inertia(const PsoParams& params, std::size_t k);

/// Particles start uniform in the box with zero velocity. Per iteration and
/// particle, draws r1 then r2 for each dimension. Positions are clamped; the
/// velocity is not. Uses Np * (gen + 1) evaluations.
RunResult run_pso(ObjectiveSpec spec, const PsoParams& params, std::uint64_t seed);

/// Per target i: three distinct donors (rejection-sampled, one draw each
/// try), the forced crossover index, then one crossover draw per dimension.
/// Trial vectors are clamped and replace the target when not worse.
RunResult run_de(ObjectiveSpec spec, const DeParams& params, std::uint64_t seed);

} // namespace sms
