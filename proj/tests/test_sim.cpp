#include "equistab/errors.hpp"
#include "equistab/netsolve.hpp"
#include "equistab/sim.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace equistab;

namespace {

Scenario fixture(const char* name) { return load_scenario(oracle::fixture(name)); }

double max_state_gap(const Trajectory& a, std::size_t ka, const Trajectory& b, std::size_t kb) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.machine_count(); ++i) {
        worst = std::max(worst, std::abs(a.delta[ka][i] - b.delta[kb][i]));
        worst = std::max(worst, std::abs(a.omega[ka][i] - b.omega[kb][i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("equilibrium stays put for ten seconds") {
    Scenario s = fixture("three_machine_stable.json");
    s.network(Stage::Fault) = s.network(Stage::Postfault);
    s.t_end = 10.0;
    const Trajectory t = simulate(s);
    for (std::size_t k = 0; k < t.sample_count(); k += 97) {
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(t.delta[k][i] - s.initial_angles[i]) <= 1e-10);
            CHECK(std::abs(t.omega[k][i]) <= 1e-10);
        }
    }
}

TEST_CASE("decoupled fault stage accelerates at Pm/M") {
    const Scenario s = fixture("smib.json");
    const Trajectory t = simulate(s);
    for (std::size_t k = 0; k <= t.clearing_index(); k += 25) {
        const double time = t.times[k];
        for (std::size_t i = 0; i < 2; ++i) {
            const double a = s.machines[i].pm / s.machines[i].inertia_M;
            CHECK(t.omega[k][i] == doctest::Approx(a * time).epsilon(1e-12));
            CHECK(t.delta[k][i] == doctest::Approx(s.initial_angles[i] + 0.5 * a * time * time).epsilon(1e-12));
        }
    }
}

TEST_CASE("matches the independent reference integrator at t = 1 s") {
    for (const char* name : {"three_machine_stable.json", "three_machine_unstable.json"}) {
        CAPTURE(name);
        const Scenario s = fixture(name);
        const Trajectory t = simulate(s);
        const std::size_t k = static_cast<std::size_t>(std::find(t.times.begin(), t.times.end(), 1.0) - t.times.begin());
        REQUIRE(k < t.sample_count());
        const oracle::State ref = oracle::reference_state(s, 1.0, 10);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(t.delta[k][i] - ref.delta[i]) <= 1e-6);
            CHECK(std::abs(t.omega[k][i] - ref.omega[i]) <= 1e-5);
        }
        // Refining by ten should land on the same oracle much more tightly.
        const Trajectory fine = refine_dt(s, 10);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(fine.delta[10 * k][i] - ref.delta[i]) <= 1e-9);
    }
}

TEST_CASE("refine_dt: identity at factor 1, fourth-order convergence") {
    const Scenario s = fixture("three_machine_stable.json");
    const Trajectory t1 = simulate(s);
    const Trajectory r1 = refine_dt(s, 1);
    CHECK(r1.times == t1.times);
    CHECK(r1.delta == t1.delta);
    CHECK(r1.omega == t1.omega);

    const Trajectory t2 = refine_dt(s, 2);
    const Trajectory t4 = refine_dt(s, 4);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t k = 0; k < t1.sample_count(); ++k) {
        REQUIRE(t1.times[k] == doctest::Approx(t4.times[4 * k]).epsilon(1e-12));
        e1 = std::max(e1, max_state_gap(t1, k, t4, 4 * k));
        e2 = std::max(e2, max_state_gap(t2, 2 * k, t4, 4 * k));
    }
    // (1 − 1/256) / (1/16 − 1/256) = 17 for a clean fourth-order method.
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 22.0);
    CHECK_THROWS_AS(refine_dt(s, 0), ValidationError);
}

TEST_CASE("stage boundaries land exactly") {
    Scenario s = fixture("three_machine_unstable.json");
    s.t_clear = 0.3337;
    s.t_end = 1.23456;
    const Trajectory t = simulate(s);
    CHECK(t.times[t.clearing_index()] == s.t_clear);
    CHECK(t.times.back() == s.t_end);
    CHECK(t.stage_marks.front() == 0);
    for (std::size_t k = 1; k < t.sample_count(); ++k) CHECK(t.times[k] > t.times[k - 1]);
    CHECK(t.times[t.clearing_index() - 1] < s.t_clear);
}

TEST_CASE("system momentum is conserved in a lossless scenario") {
    for (const char* name : {"three_machine_stable.json", "three_machine_unstable.json", "smib.json"}) {
        CAPTURE(name);
        const Scenario s = fixture(name);
        double pm = 0.0;
        for (const auto& m : s.machines) pm += m.pm;
        REQUIRE(std::abs(pm) < 1e-12);
        const Trajectory t = simulate(s);
        auto momentum = [&](std::size_t k) {
            double p = 0.0;
            for (std::size_t i = 0; i < t.machine_count(); ++i) p += t.machine_ms[i] * t.omega[k][i];
            return p;
        };
        double worst = 0.0;
        for (std::size_t k = 0; k < t.sample_count(); ++k) worst = std::max(worst, std::abs(momentum(k) - momentum(0)));
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("runs are bit-identical") {
    const Scenario s = fixture("runaway.json");
    const Trajectory a = simulate(s);
    const Trajectory b = simulate(s);
    CHECK(a.times == b.times);
    CHECK(a.delta == b.delta);
    CHECK(a.omega == b.omega);
}

TEST_CASE("power series switches network at the clearing sample") {
    const Scenario s = fixture("three_machine_stable.json");
    const Trajectory t = simulate(s);
    const PowerSeries p = power_series(s, t);
    const std::size_t c = t.clearing_index();
    const auto post = electrical_power(t.delta[c], s.network(Stage::Postfault), s.machines);
    const auto fault = electrical_power(t.delta[c - 1], s.network(Stage::Fault), s.machines);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(p.pe[c][i] == post[i]);
        CHECK(p.pe[c - 1][i] == fault[i]);
        CHECK(p.accel(c, i) == s.machines[i].pm - post[i]);
    }
}

TEST_CASE("blow-up is a numeric error") {
    Scenario s = fixture("smib.json");
    s.machines[0].inertia_M = 1e-300;
    s.machines[0].pm = 1e300;
    CHECK_THROWS_AS(simulate(s), NumericError);
}

TEST_CASE("invalid scenario is refused before integrating") {
    Scenario s = fixture("smib.json");
    s.dt = -1.0;
    CHECK_THROWS_AS(simulate(s), ValidationError);
}
