#pragma once

#include "sms/core.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sms::bench {

inline constexpr int kFunctionCount = 24;

/// Dense row-major matrix for instance data.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vector data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    bool empty() const noexcept { return data.empty(); }
    bool operator==(const Matrix&) const = default;
};

/// One concrete benchmark problem with all of its seeded data.
///
/// `shift` is the translation applied before the base function (the
/// optimizer for most shifted functions, the alpha vector for f23).
/// Matrix fields are only populated for the functions that use them:
///   f17  sign_vector
///   f21  matrix_a (integer entries), vector_b = matrix_a * shift
///   f23  matrix_a, matrix_b (integer entries)
///   f24  component_shifts (10 x n); component_fmax is derived
struct BenchmarkInstance {
    int id = 0;
    std::size_t n = 0;
    std::uint64_t instance_seed = 0;
    Vector shift;
    double f_opt = 0.0;
    Vector sign_vector;
    Matrix matrix_a;
    Matrix matrix_b;
    Vector vector_b;
    Matrix component_shifts;
    Vector component_fmax;

    bool operator==(const BenchmarkInstance&) const = default;
};

/// "f7" -> 7. Throws ConfigError for anything outside f1..f24.
int parse_id(std::string_view name);
std::string id_name(int id);

/// Dimension fixed by the tables: 4, 6, 2 for f12..f14 and 30 otherwise.
std::size_t default_dimension(int id);

/// Search box for function `id` in n dimensions.
Bounds bounds_for(int id, std::size_t n);

/// Generates the instance data for (id, n, seed). Deterministic.
BenchmarkInstance generate_instance(int id, std::size_t n, std::uint64_t instance_seed);

/// Wraps an instance as an objective. The instance is shared, not copied.
ObjectiveSpec to_objective(std::shared_ptr<const BenchmarkInstance> inst);

/// generate_instance + to_objective.
ObjectiveSpec make_instance(int id, std::size_t n, std::uint64_t instance_seed);
ObjectiveSpec make_instance(std::string_view id, std::size_t n, std::uint64_t instance_seed);

/// Functions f1..f14 (no instance data).
double eval_classic(int id, std::span<const double> x, RandomStream& rng);

/// Functions f15..f24.
double eval_gecco(int id, std::span<const double> x, const BenchmarkInstance& inst,
                  RandomStream& rng);

/// Any function, dispatching on inst.id.
double evaluate_instance(const BenchmarkInstance& inst, std::span<const double> x,
                         RandomStream& rng);

/// Oscillation transform used by f15.
Vector t_osz(std::span<const double> h);

/// 100 * sum(max(0, |h_i| - 5)^2)
double f_pen(std::span<const double> h);

/// Diagonal of the ill-conditioning matrix: alpha^((i-1) / (2(n-1))).
Vector lambda_matrix(double alpha_exp, std::size_t n);

/// Weights and base functions of the f24 composition.
namespace composition {
inline constexpr double kLambda[10] = {10.0 / 32, 5.0 / 32, 2.0,        1.0,       10.0 / 100,
                                       5.0 / 100, 20.0,     10.0,       10.0 / 60, 5.0 / 60};
double ackley(std::span<const double> z);
double rastrigin(std::span<const double> z);
double sphere(std::span<const double> z);
double weierstrass(std::span<const double> z);
double griewank(std::span<const double> z);
/// Component i in 0..9 evaluated at z.
double component(std::size_t i, std::span<const double> z);
} // namespace composition

/// Known optimizer, where one is analytically available.
std::optional<Vector> known_optimizer(const BenchmarkInstance& inst);

/// Text dump: `key = value` lines in the order id, n, instance_seed, x_opt,
/// f_opt, then the optional vectors and matrices. A matrix line carries its
/// shape and is followed by one whitespace-separated row per line. Doubles are
/// written in shortest round-trip form, so a reload is bit-exact.
void dump_instance(const BenchmarkInstance& inst, std::ostream& out);
BenchmarkInstance load_instance(std::istream& in);

} // namespace sms::bench
