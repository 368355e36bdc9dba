#pragma once

#include "sms/core.hpp"

#include <cstdint>
#include <optional>

namespace sms {

/// Operator settings for one state of matter.
struct StateConfig {
    double rho_lo = 0.0;
    double rho_hi = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double H = 0.0;

    void validate() const;
    bool operator==(const StateConfig&) const = default;
};

inline constexpr StateConfig kGasState{0.8, 1.0, 0.8, 0.8, 0.9};
inline constexpr StateConfig kLiquidState{0.3, 0.6, 0.4, 0.2, 0.2};
inline constexpr StateConfig kSolidState{0.0, 0.1, 0.1, 0.0, 0.0};

enum class Phase { gas, liquid, solid };

/// Gas/liquid/solid split of the iteration budget.
struct PhaseSchedule {
    double gas_frac = 0.5;
    double liquid_frac = 0.4;
    double solid_frac = 0.1;
    StateConfig gas = kGasState;
    StateConfig liquid = kLiquidState;
    StateConfig solid = kSolidState;

    void validate() const;

    /// Last iteration (1-based) of the gas phase for a run of `gen` iterations.
    std::size_t gas_end(std::size_t gen) const;
    /// Last iteration (1-based) of the liquid phase.
    std::size_t liquid_end(std::size_t gen) const;
};

/// How the displacement factor rho is sampled from the state's range.
enum class RhoSampling {
    per_dimension, ///< fresh rho for every molecule and dimension
    per_molecule,  ///< one rho per molecule per iteration
};

struct SmsParams {
    std::size_t np = 50;
    std::size_t gen = 1000;
    PhaseSchedule schedule{};
    RhoSampling rho_sampling = RhoSampling::per_dimension;

    void validate() const;
};

/// Output shared by every optimizer in this library.
struct RunResult {
    BestRecord best;
    Vector trace;              ///< best-so-far value after each iteration
    std::uint64_t evaluations = 0;
    std::uint64_t seed = 0;
    bool non_finite = false;   ///< an objective evaluation returned NaN/inf
};

/// Operator counts for one SMS iteration.
struct IterationStats {
    std::size_t swaps = 0;
    std::size_t regenerated = 0;
    std::uint64_t draws = 0;
};

/// Working state of one SMS run: population, its objective values, and the
/// historical best.
struct SmsState {
    Population pop;
    Vector values;
    BestRecord best;
};

/// Velocity scale: beta times the mean box width.
double compute_v_init(const Bounds& bounds, double beta);

/// Collision radius: alpha times the mean box width.
double compute_collision_radius(const Bounds& bounds, double alpha);

/// Distances below this make the attraction vector zero.
inline constexpr double kAttractionEpsilon = 1e-12;

/// Unit vector from p toward p_best, or zero when they (nearly) coincide.
Vector attraction_unit_vector(std::span<const double> p, std::span<const double> p_best);

/// d * (1 - k/gen) * 0.5 + a, element-wise.
Vector update_direction(std::span<const double> d, std::span<const double> a, std::size_t k,
                        std::size_t gen);

/// Displaces the molecule along its direction and clamps it to the box.
/// Per dimension: one uniform factor, then (in per-dimension mode) one rho
/// draw. In per-molecule mode a single rho is drawn before the dimensions.
void move_molecule(Molecule& m, double v_init, const StateConfig& cfg, const Bounds& bounds,
                   RandomStream& rng, RhoSampling rho_sampling = RhoSampling::per_dimension);

/// Swaps directions of every pair i < q closer than r, in lexicographic pair
/// order with immediate effect. Returns the number of swaps.
std::size_t apply_collisions(Population& pop, double r);

/// One threshold draw per molecule; below H the whole position is redrawn.
/// Returns the number of regenerated molecules.
std::size_t apply_random_positions(Population& pop, double H, const Bounds& bounds,
                                   RandomStream& rng);

/// Keeps the incumbent unless the population holds a strictly better value.
BestRecord update_best(const std::optional<BestRecord>& best, const Population& pop,
                       std::span<const double> values);

Phase phase_for_iteration(std::size_t k, std::size_t gen, const PhaseSchedule& schedule);
const StateConfig& state_for_iteration(std::size_t k, std::size_t gen,
                                       const PhaseSchedule& schedule);

/// One pass of the general procedure at iteration k of gen.
IterationStats sms_iteration(SmsState& state, const StateConfig& cfg, std::size_t k,
                             std::size_t gen, ObjectiveSpec& spec, RandomStream& rng,
                             RhoSampling rho_sampling = RhoSampling::per_dimension);

/// Initial population, evaluated, with its best recorded.
SmsState init_sms_state(ObjectiveSpec& spec, std::size_t np, RandomStream& rng);

/// Full gas -> liquid -> solid run. Uses Np * (gen + 1) evaluations.
RunResult run_sms(ObjectiveSpec spec, const SmsParams& params, std::uint64_t seed);

} // namespace sms
