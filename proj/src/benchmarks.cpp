#include "sms/benchmarks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace sms::bench {

namespace {

using std::numbers::pi;

constexpr double kKowalikA[11] = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                  0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
constexpr double kKowalikInvB[11] = {0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16};

constexpr double kHartmannC[4] = {1.0, 1.2, 3.0, 3.2};
constexpr double kHartmannA[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                     {0.05, 10, 17, 0.1, 8, 14},
                                     {3, 3.5, 1.7, 10, 17, 8},
                                     {17, 8, 0.05, 10, 0.1, 14}};
constexpr double kHartmannP[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                     {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                     {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                     {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

constexpr double kKowalikOptimizer[4] = {0.192833, 0.190836, 0.123117, 0.135766};
constexpr double kHartmannOptimizer[6] = {0.20169, 0.150011, 0.476874,
                                          0.275332, 0.311652, 0.6573};

// Literature minima: Kowalik 3.0748598e-4, Hartmann-6 -3.32237.
constexpr double kKowalikFopt = 3.0748598e-4;
constexpr double kHartmannFopt = -3.32237;

constexpr double kSchwefelOptimum = 420.9687;

void check_dim(std::span<const double> x, std::size_t n, int id) {
    if (x.size() != n)
        throw DimensionError(id_name(id) + ": expected dimension " + std::to_string(n) +
                             ", got " + std::to_string(x.size()));
}

double sq(double v) { return v * v; }

double penalty_u(double x, double a, double k, double m) {
    if (x > a)
        return k * std::pow(x - a, m);
    if (x < -a)
        return k * std::pow(-x - a, m);
    return 0.0;
}

double sum_of_squares(std::span<const double> z) {
    double s = 0.0;
    for (double v : z)
        s += v * v;
    return s;
}

// sum_i (sum_{j<=i} z_j)^2
double cumulative_quadratic(std::span<const double> z) {
    double partial = 0.0;
    double s = 0.0;
    for (double v : z) {
        partial += v;
        s += partial * partial;
    }
    return s;
}

Vector minus(std::span<const double> x, std::span<const double> y) {
    Vector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = x[i] - y[i];
    return z;
}

// Draws an integer uniformly from [lo, hi] with one uniform draw.
double uniform_integer(RandomStream& rng, int lo, int hi) {
    const auto span = static_cast<std::size_t>(hi - lo + 1);
    return static_cast<double>(lo + static_cast<int>(rng.index(span)));
}

// Uniform over the central 80% of the box.
Vector central_point(const Bounds& b, RandomStream& rng) {
    Vector x(b.dim());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double margin = 0.1 * b.width(j);
        x[j] = rng.uniform(b.low()[j] + margin, b.high()[j] - margin);
    }
    return x;
}

// Heavy-tailed offset rounded to two decimals and clipped to [-1000, 1000].
double draw_offset(RandomStream& rng) {
    const double g1 = rng.standard_normal();
    const double g2 = rng.standard_normal();
    const double v = std::round(100.0 * 100.0 * g1 / g2) / 100.0;
    return std::clamp(v, -1000.0, 1000.0);
}

bool nonsingular(const Matrix& m) {
    // Gaussian elimination with partial pivoting on a copy.
    Matrix a = m;
    const std::size_t n = a.rows;
    double scale = 0.0;
    for (double v : a.data)
        scale = std::max(scale, std::abs(v));
    if (scale == 0.0)
        return false;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a(r, c)) > std::abs(a(piv, c)))
                piv = r;
        }
        if (std::abs(a(piv, c)) < 1e-9 * scale)
            return false;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(c, j), a(piv, j));
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return true;
}

Matrix integer_matrix(std::size_t n, int lo, int hi, RandomStream& rng) {
    Matrix m(n, n);
    for (auto& v : m.data)
        v = uniform_integer(rng, lo, hi);
    return m;
}

std::uint64_t instance_stream_seed(int id, std::uint64_t seed) {
    return seed ^ (static_cast<std::uint64_t>(id) * 0x9E3779B97F4A7C15ULL);
}

void require_data(bool ok, int id, const char* what) {
    if (!ok)
        throw ConfigError(id_name(id) + ": instance is missing " + std::string(what));
}

// f23: A_i = sum_j a_ij sin(alpha_j) + b_ij cos(alpha_j), and B_i(x) likewise.
Vector trig_rows(const Matrix& a, const Matrix& b, std::span<const double> x) {
    const std::size_t n = x.size();
    Vector s(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        s[j] = std::sin(x[j]);
        c[j] = std::cos(x[j]);
    }
    Vector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += a(i, j) * s[j] + b(i, j) * c[j];
        out[i] = acc;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Identifiers and boxes

int parse_id(std::string_view name) {
    if (name.size() >= 2 && (name[0] == 'f' || name[0] == 'F')) {
        int id = 0;
        auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), id);
        if (ec == std::errc{} && ptr == name.data() + name.size() && id >= 1 &&
            id <= kFunctionCount)
            return id;
    }
    throw ConfigError("unknown benchmark id '" + std::string(name) + "'");
}

std::string id_name(int id) { return "f" + std::to_string(id); }

std::size_t default_dimension(int id) {
    switch (id) {
    case 12:
        return 4;
    case 13:
        return 6;
    case 14:
        return 2;
    default:
        return 30;
    }
}

Bounds bounds_for(int id, std::size_t n) {
    switch (id) {
    case 1:
    case 2:
        return Bounds::uniform(n, -100, 100);
    case 3:
        return Bounds::uniform(n, -30, 30);
    case 4:
        return Bounds::uniform(n, -1.28, 1.28);
    case 5:
        return Bounds::uniform(n, -500, 500);
    case 6:
        return Bounds::uniform(n, -5.12, 5.12);
    case 7:
        return Bounds::uniform(n, -600, 600);
    case 8:
    case 9:
        return Bounds::uniform(n, -50, 50);
    case 10:
        return Bounds::uniform(n, -10, 10);
    case 11:
        return Bounds::uniform(n, -100, 100);
    case 12:
        return Bounds::uniform(n, -5, 5);
    case 13:
        return Bounds::uniform(n, 0, 1);
    case 14:
        return Bounds::uniform(n, -4.5, 4.5);
    case 15:
    case 16:
    case 17:
    case 24:
        return Bounds::uniform(n, -5, 5);
    case 23:
        return Bounds::uniform(n, -pi, pi);
    case 18:
    case 19:
    case 20:
    case 21:
    case 22:
        return Bounds::uniform(n, -100, 100);
    default:
        throw ConfigError("unknown benchmark id " + std::to_string(id));
    }
}

// ---------------------------------------------------------------------------
// Transforms

Vector t_osz(std::span<const double> h) {
    Vector out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double v = h[i];
        if (v == 0.0) {
            out[i] = 0.0;
            continue;
        }
        const double k = std::log(std::abs(v));
        const double c1 = v > 0 ? 10.0 : 5.5;
        const double c2 = v > 0 ? 7.9 : 3.1;
        const double mag = std::exp(k + 0.049 * (std::sin(c1 * k) + std::sin(c2 * k)));
        out[i] = v > 0 ? mag : -mag;
    }
    return out;
}

double f_pen(std::span<const double> h) {
    double s = 0.0;
    for (double v : h)
        s += sq(std::max(0.0, std::abs(v) - 5.0));
    return 100.0 * s;
}

Vector lambda_matrix(double alpha_exp, std::size_t n) {
    if (n < 2)
        throw DimensionError("lambda_matrix: n must be at least 2");
    Vector diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = std::pow(alpha_exp, static_cast<double>(i) / (2.0 * static_cast<double>(n - 1)));
    return diag;
}

// ---------------------------------------------------------------------------
// f24 components

namespace composition {

double ackley(std::span<const double> z) {
    const double d = static_cast<double>(z.size());
    double s2 = 0.0, sc = 0.0;
    for (double v : z) {
        s2 += v * v;
        sc += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(s2 / d)) - std::exp(sc / d) + 20.0 + std::numbers::e;
}

double rastrigin(std::span<const double> z) {
    double s = 0.0;
    for (double v : z)
        s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
    return s;
}

double sphere(std::span<const double> z) { return sum_of_squares(z); }

double weierstrass(std::span<const double> z) {
    constexpr double a = 0.5;
    constexpr double b = 3.0;
    constexpr int kmax = 20;
    double s = 0.0;
    for (double v : z) {
        double ak = 1.0, bk = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            s += ak * std::cos(2.0 * pi * bk * (v + 0.5));
            ak *= a;
            bk *= b;
        }
    }
    double bias = 0.0;
    double ak = 1.0, bk = 1.0;
    for (int k = 0; k <= kmax; ++k) {
        bias += ak * std::cos(2.0 * pi * bk * 0.5);
        ak *= a;
        bk *= b;
    }
    return s - static_cast<double>(z.size()) * bias;
}

double griewank(std::span<const double> z) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        s += z[i] * z[i] / 4000.0;
        p *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s - p + 1.0;
}

double component(std::size_t i, std::span<const double> z) {
    switch (i / 2) {
    case 0:
        return ackley(z);
    case 1:
        return rastrigin(z);
    case 2:
        return sphere(z);
    case 3:
        return weierstrass(z);
    default:
        return griewank(z);
    }
}

} // namespace composition

// ---------------------------------------------------------------------------
// Evaluation

double eval_classic(int id, std::span<const double> x, RandomStream& rng) {
    const std::size_t n = x.size();
    const auto nd = static_cast<double>(n);
    switch (id) {
    case 1:
        return sum_of_squares(x);
    case 2: {
        double m = 0.0;
        for (double v : x)
            m = std::max(m, std::abs(v));
        return m;
    }
    case 3: {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
        return s;
    }
    case 4: {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += static_cast<double>(i + 1) * sq(sq(x[i]));
        return s + rng.uniform();
    }
    case 5: {
        double s = 418.9829 * nd;
        for (double v : x)
            s -= v * std::sin(std::sqrt(std::abs(v)));
        return s;
    }
    case 6: {
        double s = 0.0;
        for (double v : x)
            s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
        return s;
    }
    case 7:
        return composition::griewank(x);
    case 8: {
        Vector y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = 1.0 + (x[i] + 1.0) / 4.0;
        double s = 10.0 * sq(std::sin(pi * y[0]));
        for (std::size_t i = 0; i + 1 < n; ++i)
            s += sq(y[i] - 1.0) * (1.0 + 10.0 * sq(std::sin(pi * y[i + 1])));
        s += sq(y[n - 1] - 1.0);
        double pen = 0.0;
        for (double v : x)
            pen += penalty_u(v, 10, 100, 4);
        return pi / nd * s + pen;
    }
    case 9: {
        double s = sq(std::sin(3.0 * pi * x[0]));
        for (std::size_t i = 0; i + 1 < n; ++i)
            s += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * pi * x[i + 1])));
        s += sq(x[n - 1] - 1.0) * (1.0 + sq(std::sin(2.0 * pi * x[n - 1])));
        double pen = 0.0;
        for (double v : x)
            pen += penalty_u(v, 5, 100, 4);
        return 0.1 * s + pen;
    }
    case 10: {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s1 += x[i] * x[i];
            s2 += 0.5 * static_cast<double>(i + 1) * x[i];
        }
        return s1 + sq(s2) + sq(sq(s2));
    }
    case 11: {
        const double r = std::sqrt(sum_of_squares(x));
        return 1.0 - std::cos(2.0 * pi * r) + 0.1 * r;
    }
    case 12: {
        check_dim(x, 4, id);
        double s = 0.0;
        for (std::size_t i = 0; i < 11; ++i) {
            const double b = 1.0 / kKowalikInvB[i];
            const double num = x[0] * (b * b + b * x[1]);
            const double den = b * b + b * x[2] + x[3];
            s += sq(kKowalikA[i] - num / den);
        }
        return s;
    }
    case 13: {
        check_dim(x, 6, id);
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            double inner = 0.0;
            for (std::size_t j = 0; j < 6; ++j)
                inner += kHartmannA[i][j] * sq(x[j] - kHartmannP[i][j]);
            s -= kHartmannC[i] * std::exp(-inner);
        }
        return s;
    }
    case 14: {
        check_dim(x, 2, id);
        const double x1 = x[0], x2 = x[1];
        return sq(1.5 - x1 + x1 * x2) + sq(2.25 - x1 + x1 * x2 * x2) +
               sq(2.625 - x1 + x1 * x2 * x2 * x2);
    }
    default:
        throw ConfigError("eval_classic: " + id_name(id) + " is not a classic function");
    }
}

double eval_gecco(int id, std::span<const double> x, const BenchmarkInstance& inst,
                  RandomStream& rng) {
    const std::size_t n = x.size();
    check_dim(x, inst.n, id);
    if (id != 24)
        require_data(inst.shift.size() == n, id, "its shift vector");

    switch (id) {
    case 15: {
        const Vector z = t_osz(minus(x, inst.shift));
        double s = 1e6 * z[0] * z[0];
        for (std::size_t i = 1; i < n; ++i)
            s += z[i] * z[i];
        return s + inst.f_opt;
    }
    case 16: {
        const Vector z = minus(x, inst.shift);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = 2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(n - 1);
            s += std::pow(std::abs(z[i]), e);
        }
        return std::sqrt(s) + inst.f_opt;
    }
    case 17: {
        require_data(inst.sign_vector.size() == n, id, "its sign vector");
        const Vector& xo = inst.shift;
        Vector xh(n);
        for (std::size_t i = 0; i < n; ++i)
            xh[i] = 2.0 * inst.sign_vector[i] * x[i];
        Vector zh = xh;
        for (std::size_t i = 0; i + 1 < n; ++i)
            zh[i + 1] = xh[i + 1] + 0.25 * (xh[i] - xo[i]);
        const Vector lambda = lambda_matrix(10.0, n);
        Vector z(n);
        for (std::size_t i = 0; i < n; ++i)
            z[i] = 100.0 * (lambda[i] * (zh[i] - xo[i]) + xo[i]);
        double s = 0.0;
        for (double v : z)
            s += v * std::sin(std::sqrt(std::abs(v)));
        Vector scaled(n);
        for (std::size_t i = 0; i < n; ++i)
            scaled[i] = z[i] / 100.0;
        return -s / static_cast<double>(n) + 4.189828872724339 + 100.0 * f_pen(scaled) +
               inst.f_opt;
    }
    case 18:
        return sum_of_squares(minus(x, inst.shift)) + inst.f_opt;
    case 19:
        return cumulative_quadratic(minus(x, inst.shift)) + inst.f_opt;
    case 20: {
        const double base = cumulative_quadratic(minus(x, inst.shift));
        return base * (1.0 + 0.4 * std::abs(rng.standard_normal())) + inst.f_opt;
    }
    case 21: {
        require_data(inst.matrix_a.rows == n && inst.vector_b.size() == n, id, "A and b");
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = inst.matrix_a.row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                acc += row[j] * x[j];
            m = std::max(m, std::abs(acc - inst.vector_b[i]));
        }
        return m + inst.f_opt;
    }
    case 22: {
        const Vector z = minus(x, inst.shift);
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            s += 100.0 * sq(z[i] * z[i] - z[i + 1]) + sq(z[i] - 1.0);
        return s + inst.f_opt;
    }
    case 23: {
        require_data(inst.matrix_a.rows == n && inst.matrix_b.rows == n, id, "a and b matrices");
        const Vector target = trig_rows(inst.matrix_a, inst.matrix_b, inst.shift);
        const Vector value = trig_rows(inst.matrix_a, inst.matrix_b, x);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += sq(target[i] - value[i]);
        return s + inst.f_opt;
    }
    case 24: {
        require_data(inst.component_shifts.rows == 10 && inst.component_shifts.cols == n &&
                         inst.component_fmax.size() == 10,
                     id, "its component shifts");
        double s = 0.0;
        for (std::size_t c = 0; c < 10; ++c) {
            const Vector z = minus(x, inst.component_shifts.row(c));
            s += composition::component(c, z) / inst.component_fmax[c] /
                 composition::kLambda[c];
        }
        return s + inst.f_opt;
    }
    default:
        throw ConfigError("eval_gecco: " + id_name(id) + " is not a GECCO function");
    }
}

double evaluate_instance(const BenchmarkInstance& inst, std::span<const double> x,
                         RandomStream& rng) {
    if (inst.id <= 14) {
        check_dim(x, inst.n, inst.id);
        return eval_classic(inst.id, x, rng);
    }
    return eval_gecco(inst.id, x, inst, rng);
}

// ---------------------------------------------------------------------------
// Instances

namespace {

Vector composition_fmax(std::size_t n) {
    Vector fmax(10);
    for (std::size_t c = 0; c < 10; ++c) {
        const Vector corner(n, 5.0 / composition::kLambda[c]);
        const double v = std::abs(composition::component(c, corner));
        fmax[c] = v > 0.0 ? v : 1.0;
    }
    return fmax;
}

} // namespace

BenchmarkInstance generate_instance(int id, std::size_t n, std::uint64_t instance_seed) {
    if (id < 1 || id > kFunctionCount)
        throw ConfigError("unknown benchmark id " + std::to_string(id));
    if ((id >= 12 && id <= 14) && n != default_dimension(id))
        throw ConfigError(id_name(id) + " is only defined for n = " +
                          std::to_string(default_dimension(id)));
    if (n < 2)
        throw ConfigError(id_name(id) + ": dimension must be at least 2");

    BenchmarkInstance inst;
    inst.id = id;
    inst.n = n;
    inst.instance_seed = instance_seed;

    switch (id) {
    case 12:
        inst.f_opt = kKowalikFopt;
        break;
    case 13:
        inst.f_opt = kHartmannFopt;
        break;
    case 18:
    case 19:
    case 20:
        inst.f_opt = -450.0;
        break;
    case 21:
        inst.f_opt = -310.0;
        break;
    case 22:
        inst.f_opt = 390.0;
        break;
    case 23:
        inst.f_opt = -460.0;
        break;
    default:
        inst.f_opt = 0.0;
    }
    if (id <= 14)
        return inst;

    RandomStream rng(instance_stream_seed(id, instance_seed));
    const Bounds box = bounds_for(id, n);

    if (id <= 17)
        inst.f_opt = draw_offset(rng);
    if (id != 24)
        inst.shift = central_point(box, rng);

    switch (id) {
    case 17:
        inst.sign_vector.resize(n);
        for (auto& s : inst.sign_vector)
            s = rng.uniform() < 0.5 ? -1.0 : 1.0;
        break;
    case 21: {
        do {
            inst.matrix_a = integer_matrix(n, -500, 500, rng);
        } while (!nonsingular(inst.matrix_a));
        inst.vector_b.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = inst.matrix_a.row(i);
            for (std::size_t j = 0; j < n; ++j)
                inst.vector_b[i] += row[j] * inst.shift[j];
        }
        break;
    }
    case 23:
        inst.matrix_a = integer_matrix(n, -100, 100, rng);
        inst.matrix_b = integer_matrix(n, -100, 100, rng);
        break;
    case 24:
        inst.component_shifts = Matrix(10, n);
        for (auto& v : inst.component_shifts.data)
            v = rng.uniform(-5.0, 5.0);
        inst.component_fmax = composition_fmax(n);
        break;
    default:
        break;
    }
    return inst;
}

std::optional<Vector> known_optimizer(const BenchmarkInstance& inst) {
    const std::size_t n = inst.n;
    switch (inst.id) {
    case 1:
    case 2:
    case 4:
    case 6:
    case 7:
    case 10:
    case 11:
        return Vector(n, 0.0);
    case 3:
    case 9:
        return Vector(n, 1.0);
    case 5:
        return Vector(n, kSchwefelOptimum);
    case 8:
        return Vector(n, -1.0);
    case 12:
        return Vector(std::begin(kKowalikOptimizer), std::end(kKowalikOptimizer));
    case 13:
        return Vector(std::begin(kHartmannOptimizer), std::end(kHartmannOptimizer));
    case 14:
        return Vector{3.0, 0.5};
    case 15:
    case 16:
    case 18:
    case 19:
    case 20:
    case 21:
    case 23:
        return inst.shift;
    case 22: {
        Vector x = inst.shift;
        for (auto& v : x)
            v += 1.0;
        return x;
    }
    default:
        return std::nullopt;
    }
}

ObjectiveSpec to_objective(std::shared_ptr<const BenchmarkInstance> inst) {
    const int id = inst->id;
    const std::size_t n = inst->n;
    auto f_opt = id != 24 ? std::optional<double>(inst->f_opt) : std::nullopt;
    auto x_opt = known_optimizer(*inst);
    return ObjectiveSpec{.id = id_name(id),
                         .n = n,
                         .bounds = bounds_for(id, n),
                         .fn = [inst = std::move(inst)](std::span<const double> x,
                                                        RandomStream& rng) {
                             return evaluate_instance(*inst, x, rng);
                         },
                         .f_opt = f_opt,
                         .x_opt = std::move(x_opt),
                         .eval_count = 0,
                         .saw_non_finite = false};
}

ObjectiveSpec make_instance(int id, std::size_t n, std::uint64_t instance_seed) {
    return to_objective(
        std::make_shared<const BenchmarkInstance>(generate_instance(id, n, instance_seed)));
}

ObjectiveSpec make_instance(std::string_view id, std::size_t n, std::uint64_t instance_seed) {
    return make_instance(parse_id(id), n, instance_seed);
}

// ---------------------------------------------------------------------------
// Text dump

namespace {

void write_double(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
}

void write_values(std::ostream& out, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out << ' ';
        write_double(out, values[i]);
    }
}

void write_vector(std::ostream& out, const char* key, std::span<const double> v) {
    out << key << " =";
    if (!v.empty())
        out << ' ';
    write_values(out, v);
    out << '\n';
}

void write_matrix(std::ostream& out, const char* key, const Matrix& m) {
    out << key << " = " << m.rows << ' ' << m.cols << '\n';
    for (std::size_t i = 0; i < m.rows; ++i) {
        write_values(out, m.row(i));
        out << '\n';
    }
}

Vector parse_values(const std::string& text) {
    Vector out;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r'))
            ++p;
        if (p == end)
            break;
        double v = 0.0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{})
            throw ConfigError("instance dump: bad number near '" + std::string(p, end) + "'");
        out.push_back(v);
        p = next;
    }
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

void dump_instance(const BenchmarkInstance& inst, std::ostream& out) {
    out << "id = " << id_name(inst.id) << '\n';
    out << "n = " << inst.n << '\n';
    out << "instance_seed = " << inst.instance_seed << '\n';
    write_vector(out, "x_opt", inst.shift);
    out << "f_opt = ";
    write_double(out, inst.f_opt);
    out << '\n';
    if (!inst.sign_vector.empty())
        write_vector(out, "sign_vector", inst.sign_vector);
    if (!inst.matrix_a.empty())
        write_matrix(out, "matrix_a", inst.matrix_a);
    if (!inst.matrix_b.empty())
        write_matrix(out, "matrix_b", inst.matrix_b);
    if (!inst.vector_b.empty())
        write_vector(out, "vector_b", inst.vector_b);
    if (!inst.component_shifts.empty())
        write_matrix(out, "component_shifts", inst.component_shifts);
}

BenchmarkInstance load_instance(std::istream& in) {
    BenchmarkInstance inst;
    bool have_id = false, have_n = false;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("instance dump: expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        auto read_matrix = [&](Matrix& m) {
            std::istringstream shape(value);
            std::size_t r = 0, c = 0;
            if (!(shape >> r >> c))
                throw ConfigError("instance dump: bad shape for " + key);
            m = Matrix(r, c);
            for (std::size_t i = 0; i < r; ++i) {
                std::string row;
                if (!std::getline(in, row))
                    throw ConfigError("instance dump: truncated matrix " + key);
                const Vector vals = parse_values(row);
                if (vals.size() != c)
                    throw ConfigError("instance dump: wrong row length in " + key);
                std::copy(vals.begin(), vals.end(), m.data.begin() + static_cast<long>(i * c));
            }
        };

        if (key == "id") {
            inst.id = parse_id(value);
            have_id = true;
        } else if (key == "n") {
            inst.n = std::stoul(value);
            have_n = true;
        } else if (key == "instance_seed") {
            inst.instance_seed = std::stoull(value);
        } else if (key == "x_opt") {
            inst.shift = parse_values(value);
        } else if (key == "f_opt") {
            const Vector v = parse_values(value);
            if (v.size() != 1)
                throw ConfigError("instance dump: f_opt must be a single number");
            inst.f_opt = v[0];
        } else if (key == "sign_vector") {
            inst.sign_vector = parse_values(value);
        } else if (key == "vector_b") {
            inst.vector_b = parse_values(value);
        } else if (key == "matrix_a") {
            read_matrix(inst.matrix_a);
        } else if (key == "matrix_b") {
            read_matrix(inst.matrix_b);
        } else if (key == "component_shifts") {
            read_matrix(inst.component_shifts);
        } else {
            throw ConfigError("instance dump: unknown key '" + key + "'");
        }
    }
    if (!have_id || !have_n)
        throw ConfigError("instance dump: id and n are required");
    if (inst.id == 24)
        inst.component_fmax = composition_fmax(inst.n);
    return inst;
}

} // namespace sms::bench
