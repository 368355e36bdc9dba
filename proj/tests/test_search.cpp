#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sms/benchmarks.hpp"
#include "sms/search.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace sms;
using sms::testing::ScriptedStream;

namespace {

StateConfig fixed_rho(double rho, double beta = 0.0, double alpha = 0.0, double H = 0.0) {
    return StateConfig{rho, rho, beta, alpha, H};
}

Population colocated(std::vector<Vector> directions, Vector at) {
    Population pop;
    for (auto& d : directions)
        pop.molecules.push_back({at, std::move(d)});
    return pop;
}

} // namespace

TEST_CASE("v_init and collision radius scale the mean width") {
    const auto box = Bounds::uniform(30, -100, 100);
    CHECK(compute_v_init(box, 0.8) == doctest::Approx(160.0));
    CHECK(compute_v_init(box, 0.0) == 0.0);
    CHECK(compute_v_init(Bounds({-5.0, 0.0}, {5.0, 10.0}), 0.5) == 5.0);
    CHECK(compute_collision_radius(box, 0.8) == doctest::Approx(160.0));
    CHECK(compute_collision_radius(box, 0.0) == 0.0);
    CHECK(compute_collision_radius(Bounds::uniform(30, -5, 5), 0.2) == doctest::Approx(2.0));
}

TEST_CASE("attraction unit vector") {
    auto a = attraction_unit_vector(std::vector<double>{0, 0}, std::vector<double>{3, 4});
    CHECK(a[0] == doctest::Approx(0.6));
    CHECK(a[1] == doctest::Approx(0.8));
    a = attraction_unit_vector(std::vector<double>{2, 2}, std::vector<double>{2, 2});
    CHECK(a == Vector{0.0, 0.0});
    a = attraction_unit_vector(std::vector<double>{1, 0}, std::vector<double>{0, 0});
    CHECK(a[0] == doctest::Approx(-1.0));
    CHECK(a[1] == doctest::Approx(0.0));
    a = attraction_unit_vector(std::vector<double>{0.0}, std::vector<double>{1e-13});
    CHECK(a == Vector{0.0});
    CHECK_THROWS_AS(attraction_unit_vector(std::vector<double>{0}, std::vector<double>{0, 1}),
                    DimensionError);
}

TEST_CASE("direction update") {
    auto d = update_direction(std::vector<double>{1, 0}, std::vector<double>{0, 1}, 0, 10);
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(1.0));
    d = update_direction(std::vector<double>{7, -3}, std::vector<double>{0.2, -0.2}, 10, 10);
    CHECK(d[0] == doctest::Approx(0.2));
    CHECK(d[1] == doctest::Approx(-0.2));
    d = update_direction(std::vector<double>{1, 1}, std::vector<double>{0, 0}, 5, 10);
    CHECK(d[0] == doctest::Approx(0.25));
    CHECK(d[1] == doctest::Approx(0.25));
    CHECK_THROWS_AS(update_direction(std::vector<double>{1}, std::vector<double>{0, 0}, 1, 10),
                    DimensionError);
}

TEST_CASE("move_molecule follows the pinned displacement") {
    const Bounds box({-100.0}, {100.0});
    Molecule m{{0.0}, {0.001}};
    ScriptedStream rng({1.0, 1.0});
    move_molecule(m, 160.0, fixed_rho(1.0), box, rng);
    CHECK(m.position[0] == doctest::Approx(32.0));
    CHECK(rng.remaining() == 0);

    Molecule far{{90.0}, {0.01}};
    ScriptedStream rng2({1.0, 1.0});
    move_molecule(far, 160.0, fixed_rho(1.0), box, rng2);
    CHECK(far.position[0] == 100.0);
}

TEST_CASE("move_molecule with zero direction leaves the position") {
    const auto box = Bounds::uniform(3, -1, 1);
    Molecule m{{0.1, -0.2, 0.3}, {0, 0, 0}};
    RandomStream rng(8);
    move_molecule(m, 5.0, kGasState, box, rng);
    CHECK(m.position == Vector{0.1, -0.2, 0.3});
    CHECK(rng.draws() == 6);
}

TEST_CASE("per-molecule rho draws once before the dimensions") {
    const auto box = Bounds::uniform(2, 0, 10);
    Molecule m{{5.0, 5.0}, {1.0, 1.0}};
    // rho draw 0.5 -> rho = 0.5 in [0, 1]; rand factors 0.2 and 0.4.
    ScriptedStream rng({0.5, 0.2, 0.4});
    move_molecule(m, 1.0, StateConfig{0.0, 1.0, 0.1, 0.0, 0.0}, box, rng,
                  RhoSampling::per_molecule);
    CHECK(m.position[0] == doctest::Approx(5.0 + 0.2 * 0.5 * 10));
    CHECK(m.position[1] == doctest::Approx(5.0 + 0.4 * 0.5 * 10));
    CHECK(rng.remaining() == 0);
}

TEST_CASE("collision swaps close pairs only") {
    Population pop;
    pop.molecules.push_back({{0.0, 0.0}, {1.0, 0.0}});
    pop.molecules.push_back({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(apply_collisions(pop, 2.0) == 1);
    CHECK(pop[0].direction == Vector{0.0, 1.0});
    CHECK(pop[1].direction == Vector{1.0, 0.0});

    pop[1].position = {3.0, 0.0};
    CHECK(apply_collisions(pop, 2.0) == 0);
    CHECK(pop[0].direction == Vector{0.0, 1.0});
}

TEST_CASE("three colocated molecules swap in pair order") {
    // (1,2): B A C  ->  (1,3): C A B  ->  (2,3): C B A
    const Vector A{1, 0, 0}, B{0, 1, 0}, C{0, 0, 1};
    auto pop = colocated({A, B, C}, {0.0, 0.0, 0.0});
    CHECK(apply_collisions(pop, 0.5) == 3);
    CHECK(pop[0].direction == C);
    CHECK(pop[1].direction == B);
    CHECK(pop[2].direction == A);
}

TEST_CASE("collision radius zero never swaps") {
    auto pop = colocated({{1.0}, {2.0}}, {0.0});
    CHECK(apply_collisions(pop, 0.0) == 0);
}

TEST_CASE("collisions preserve the direction multiset") {
    RandomStream rng(2024);
    const auto box = Bounds::uniform(3, -1, 1);
    for (int trial = 0; trial < 100; ++trial) {
        auto pop = init_population(box, 12, rng);
        std::vector<Vector> before;
        for (const auto& m : pop.molecules)
            before.push_back(m.direction);
        std::vector<Vector> positions;
        for (const auto& m : pop.molecules)
            positions.push_back(m.position);
        apply_collisions(pop, 1.2);
        std::vector<Vector> after;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            after.push_back(pop[i].direction);
            CHECK(pop[i].position == positions[i]);
        }
        std::sort(before.begin(), before.end());
        std::sort(after.begin(), after.end());
        CHECK(before == after);
    }
}

TEST_CASE("random positions") {
    const auto box = Bounds::uniform(2, -1, 1);

    RandomStream rng(4);
    auto pop = init_population(box, 5, rng);
    const auto original = pop.molecules;
    const auto drawn = rng.draws();
    CHECK(apply_random_positions(pop, 0.0, box, rng) == 0);
    CHECK(rng.draws() - drawn == 5);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(pop[i].position == original[i].position);

    CHECK(apply_random_positions(pop, 1.0, box, rng) == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(box.contains(pop[i].position));
        CHECK(pop[i].position != original[i].position);
        CHECK(pop[i].direction == original[i].direction);
    }
}

TEST_CASE("random positions with a pinned stream") {
    const auto box = Bounds::uniform(1, 0, 10);
    Population pop;
    pop.molecules.push_back({{1.0}, {0.0}});
    pop.molecules.push_back({{2.0}, {0.0}});
    // Molecule 1: threshold 0.4 < 0.5, then its new coordinate 0.75.
    // Molecule 2: threshold 0.9, kept.
    ScriptedStream rng({0.4, 0.75, 0.9});
    CHECK(apply_random_positions(pop, 0.5, box, rng) == 1);
    CHECK(pop[0].position[0] == doctest::Approx(7.5));
    CHECK(pop[1].position[0] == 2.0);
    CHECK(rng.remaining() == 0);
}

TEST_CASE("update_best") {
    Population pop;
    for (double x : {10.0, 20.0, 30.0})
        pop.molecules.push_back({{x}, {0.0}});
    const std::vector<double> values{3, 1, 2};

    auto b = update_best(std::nullopt, pop, values);
    CHECK(b.value == 1.0);
    CHECK(b.position == Vector{20.0});

    b = update_best(BestRecord{{-1.0}, 0.5}, pop, values);
    CHECK(b.value == 0.5);
    CHECK(b.position == Vector{-1.0});

    Population two;
    two.molecules.push_back({{1.0}, {0.0}});
    two.molecules.push_back({{2.0}, {0.0}});
    b = update_best(BestRecord{{9.0}, 1.0}, two, std::vector<double>{1.0, 0.9});
    CHECK(b.value == 0.9);
    CHECK(b.position == Vector{2.0});

    // A tie keeps the incumbent.
    b = update_best(BestRecord{{9.0}, 1.0}, two, std::vector<double>{1.0, 1.0});
    CHECK(b.position == Vector{9.0});
}

TEST_CASE("phase schedule") {
    const PhaseSchedule s;
    CHECK(phase_for_iteration(500, 1000, s) == Phase::gas);
    CHECK(phase_for_iteration(501, 1000, s) == Phase::liquid);
    CHECK(phase_for_iteration(900, 1000, s) == Phase::liquid);
    CHECK(phase_for_iteration(901, 1000, s) == Phase::solid);
    CHECK(phase_for_iteration(10, 10, s) == Phase::solid);
    CHECK(phase_for_iteration(1, 1, s) == Phase::solid);
    CHECK_THROWS_AS(phase_for_iteration(0, 10, s), std::out_of_range);
    CHECK_THROWS_AS(phase_for_iteration(11, 10, s), std::out_of_range);

    int counts[3] = {0, 0, 0};
    for (std::size_t k = 1; k <= 1000; ++k)
        ++counts[static_cast<int>(phase_for_iteration(k, 1000, s))];
    CHECK(counts[0] == 500);
    CHECK(counts[1] == 400);
    CHECK(counts[2] == 100);

    CHECK(state_for_iteration(1, 1000, s) == kGasState);
    CHECK(state_for_iteration(1000, 1000, s) == kSolidState);
}

TEST_CASE("schedule and state validation") {
    PhaseSchedule s;
    s.gas_frac = 0.6;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    StateConfig bad = kGasState;
    bad.rho_lo = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = kGasState;
    bad.H = -0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    SmsParams p;
    p.np = 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("one iteration desk trace, Np=2, n=1") {
    // f(x) = x^2 on [0, 10]; rho pinned to 0.5, beta 0.1, alpha 0.5, H 0.5.
    auto spec = testing::sphere_spec(1, 0.0, 10.0);
    SmsState st;
    st.pop.molecules.push_back({{2.0}, {0.5}});
    st.pop.molecules.push_back({{6.0}, {-0.2}});
    st.values = {4.0, 36.0};
    st.best = {{2.0}, 4.0};
    const StateConfig cfg{0.5, 0.5, 0.1, 0.5, 0.5};

    // v_init = 1, r = 5. k = 1 of gen = 2, so the decay factor is 0.25.
    // m1 is the leader: a = 0, d = 0.125, p = 2 + 0.125*0.4*0.5*10 = 2.25
    // m2: a = -1, d = -1.05, p = 6 - 1.05*0.2*0.5*10 = 4.95
    // |2.25 - 4.95| < 5 swaps the directions.
    // Threshold 0.7 keeps m1; 0.3 regenerates m2 at 0.05*10 = 0.5.
    ScriptedStream rng({0.4, 0.9, 0.2, 0.1, 0.7, 0.3, 0.05});
    const auto stats = sms_iteration(st, cfg, 1, 2, spec, rng);

    CHECK(rng.remaining() == 0);
    CHECK(stats.draws == 7);
    CHECK(stats.swaps == 1);
    CHECK(stats.regenerated == 1);
    CHECK(st.pop[0].position[0] == doctest::Approx(2.25));
    CHECK(st.pop[1].position[0] == doctest::Approx(0.5));
    CHECK(st.pop[0].direction[0] == doctest::Approx(-1.05));
    CHECK(st.pop[1].direction[0] == doctest::Approx(0.125));
    CHECK(st.values[0] == doctest::Approx(5.0625));
    CHECK(st.values[1] == doctest::Approx(0.25));
    CHECK(st.best.value == doctest::Approx(0.25));
    CHECK(st.best.position[0] == doctest::Approx(0.5));
    CHECK(spec.eval_count == 2);
}

TEST_CASE("solid iterations neither swap nor regenerate") {
    RandomStream rng(31);
    const std::size_t np = 20, n = 5;
    auto spec = testing::sphere_spec(n, -5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        auto st = init_sms_state(spec, np, rng);
        const auto stats = sms_iteration(st, kSolidState, 10, 10, spec, rng);
        CHECK(stats.swaps == 0);
        CHECK(stats.regenerated == 0);
        // n (rand, rho) pairs per molecule, one threshold per molecule.
        CHECK(stats.draws == np * n * 2 + np);
    }
}

TEST_CASE("iterations never lose the best and stay in bounds") {
    RandomStream rng(77);
    auto spec = bench::make_instance(6, 30, 1);
    auto st = init_sms_state(spec, 30, rng);
    const PhaseSchedule s;
    for (std::size_t k = 1; k <= 40; ++k) {
        const double before = st.best.value;
        sms_iteration(st, state_for_iteration(k, 40, s), k, 40, spec, rng);
        CHECK(st.best.value <= before);
        for (const auto& m : st.pop.molecules)
            CHECK(spec.bounds.contains(m.position));
    }
}

TEST_CASE("run_sms budget, trace and replay") {
    auto spec = bench::make_instance(1, 30, 1);
    SmsParams p;
    p.np = 20;
    p.gen = 60;
    const auto r1 = run_sms(spec, p, 12345);
    const auto r2 = run_sms(spec, p, 12345);
    CHECK(r1.evaluations == 20 * 61);
    CHECK(r1.trace.size() == 60);
    CHECK(r1.best.value == r1.trace.back());
    for (std::size_t k = 1; k < r1.trace.size(); ++k)
        CHECK(r1.trace[k] <= r1.trace[k - 1]);
    CHECK(r1.best.value == r2.best.value);
    CHECK(r1.best.position == r2.best.position);
    CHECK(r1.trace == r2.trace);
    CHECK(spec.eval_count == 0);

    const auto r3 = run_sms(spec, p, 12346);
    CHECK(r3.best.value != r1.best.value);
}

TEST_CASE("run_sms with one iteration") {
    auto spec = bench::make_instance(1, 30, 1);
    SmsParams p;
    p.np = 10;
    p.gen = 1;
    const auto r = run_sms(spec, p, 1);
    CHECK(r.trace.size() == 1);

    RandomStream rng(1);
    auto copy = spec;
    const auto init = init_sms_state(copy, 10, rng);
    CHECK(r.best.value <= init.best.value);
}

TEST_CASE("run_sms flags non-finite objectives") {
    ObjectiveSpec bad{"bad", 2, Bounds::uniform(2, -1, 1),
                      [](std::span<const double> x, RandomStream&) {
                          return x[0] > 0.9 ? std::nan("") : x[0] * x[0];
                      }};
    SmsParams p;
    p.np = 10;
    p.gen = 30;
    const auto r = run_sms(bad, p, 3);
    CHECK(r.non_finite);
    CHECK(std::isfinite(r.best.value));
}
