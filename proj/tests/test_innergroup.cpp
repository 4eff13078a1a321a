#include "equistab/errors.hpp"
#include "equistab/innergroup.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace equistab;

namespace {

struct Run {
    Trajectory traj;
    PowerSeries power;
    std::vector<FrameSeries> sys;
};

Run run(const char* name) {
    const Scenario sc = load_scenario(oracle::fixture(name));
    Run r;
    r.traj = simulate(sc);
    r.power = power_series(sc, r.traj);
    r.sys = to_coi_sys(r.traj, r.power);
    return r;
}

InnerMotionSeries synthetic(std::vector<double> excursions, std::vector<bool> in_cr) {
    InnerMotionSeries s;
    for (std::size_t i = 0; i < excursions.size(); ++i) {
        s.ids.push_back(static_cast<MachineId>(i + 1));
        s.in_cr.push_back(in_cr[i]);
        s.inertia.push_back(1.0);
        s.offset.push_back({0.0, excursions[i]});
        s.max_abs_excursion.push_back(std::abs(excursions[i]));
    }
    return s;
}

}  // namespace

TEST_CASE("singleton groups have no inner motion") {
    const Run r = run("smib.json");
    const GroupPattern p = GroupPattern::from_critical({1}, r.traj.machine_ids);
    const InnerMotionSeries s = inner_motion(r.traj, p, aggregate(r.traj, r.power, p, r.sys));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(s.max_abs_excursion[i] <= 1e-14);
    }
    CHECK(s.in_cr[0]);
    CHECK_FALSE(s.in_cr[1]);
    CHECK(classify_fierceness(s).severity_trusted);
}

TEST_CASE("in-phase members sit on their group centre") {
    Trajectory t;
    t.machine_ids = {1, 2, 3};
    t.machine_ms = {2.0, 2.0, 1.0};
    for (int k = 0; k < 5; ++k) {
        t.times.push_back(0.1 * k);
        t.delta.push_back({0.2 * k, 0.2 * k, -0.1 * k});
        t.omega.push_back({2.0, 2.0, -1.0});
    }
    t.stage_marks = {0, 1};
    PowerSeries pw;
    pw.pm.assign(3, 0.0);
    pw.pe.assign(5, std::vector<double>(3, 0.0));
    const GroupPattern p = GroupPattern::from_critical({1, 2}, t.machine_ids);
    const InnerMotionSeries s = inner_motion(t, p, aggregate(t, pw, p));
    for (double x : s.max_abs_excursion) CHECK(x <= 1e-15);
}

TEST_CASE("inner motion closes on each group's centre of inertia") {
    const Run r = run("runaway.json");
    for (const GroupPattern& p : enumerate_patterns(r.traj, PatternMode::Exhaustive)) {
        const EquivalentSeries eq = aggregate(r.traj, r.power, p, r.sys);
        const InnerMotionSeries s = inner_motion(r.traj, p, eq);
        for (std::size_t k = 0; k < r.traj.sample_count(); k += 13) {
            double cr = 0.0, ncr = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < s.ids.size(); ++i) {
                (s.in_cr[i] ? cr : ncr) += s.inertia[i] * s.offset[i][k];
                scale = std::max(scale, std::abs(r.traj.delta[k][i]) * s.inertia[i]);
            }
            CHECK(std::abs(cr) <= 1e-12 * scale);
            CHECK(std::abs(ncr) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("inner motion is frame independent") {
    const Run r = run("three_machine_unstable.json");
    const GroupPattern p = GroupPattern::from_critical({2, 3}, r.traj.machine_ids);
    const EquivalentSeries eq = aggregate(r.traj, r.power, p, r.sys);
    const InnerMotionSeries s = inner_motion(r.traj, p, eq);
    for (std::size_t k = 0; k < r.traj.sample_count(); ++k) {
        CHECK(std::abs(s.offset[1][k] - (r.sys[1].delta[k] - eq.cr_sys.delta[k])) <= 1e-12);
        CHECK(std::abs(s.offset[0][k] - (r.sys[0].delta[k] - eq.ncr_sys.delta[k])) <= 1e-12);
    }
}

TEST_CASE("fierceness threshold is a closed boundary") {
    const double pi = std::numbers::pi;
    SUBCASE("all below") {
        const FiercenessReport f = classify_fierceness(synthetic({0.5, -1.0, 3.0}, {true, true, false}));
        CHECK(f.cr == Fierceness::Slight);
        CHECK(f.ncr == Fierceness::Slight);
        CHECK(f.severity_trusted);
        CHECK(f.worst_machine == 3);
        CHECK(f.worst_excursion == 3.0);
        CHECK(f.threshold == pi);
    }
    SUBCASE("exactly at the threshold") {
        const FiercenessReport f = classify_fierceness(synthetic({0.5, -pi, 0.1}, {true, true, false}));
        CHECK(f.cr == Fierceness::Fierce);
        CHECK(f.ncr == Fierceness::Slight);
        CHECK_FALSE(f.severity_trusted);
    }
    SUBCASE("custom threshold") {
        const FiercenessReport f = classify_fierceness(synthetic({0.5, 0.2, 1.0}, {true, true, false}), 1.0);
        CHECK(f.ncr == Fierceness::Fierce);
        CHECK(f.cr == Fierceness::Slight);
    }
    CHECK(std::string(to_string(Fierceness::Fierce)) == "fierce");
    CHECK(std::string(to_string(Fierceness::Slight)) == "slight");
}

TEST_CASE("runaway member makes its group fierce") {
    const Run r = run("runaway.json");
    const GroupPattern p = GroupPattern::from_critical({2}, r.traj.machine_ids);
    const FiercenessReport f = classify_fierceness(inner_motion(r.traj, p, aggregate(r.traj, r.power, p, r.sys)));
    CHECK(f.ncr == Fierceness::Fierce);
    CHECK_FALSE(f.severity_trusted);
    CHECK(f.worst_excursion > std::numbers::pi);
}

TEST_CASE("the stable fixture keeps every group slight") {
    const Run r = run("three_machine_stable.json");
    for (const GroupPattern& p : enumerate_patterns(r.traj, PatternMode::Exhaustive)) {
        const FiercenessReport f = classify_fierceness(inner_motion(r.traj, p, aggregate(r.traj, r.power, p, r.sys)));
        CHECK(f.severity_trusted);
    }
}

TEST_CASE("mismatched equivalent series is refused") {
    const Run r = run("three_machine_stable.json");
    const GroupPattern a = GroupPattern::from_critical({2}, r.traj.machine_ids);
    const GroupPattern b = GroupPattern::from_critical({3}, r.traj.machine_ids);
    CHECK_THROWS_AS(inner_motion(r.traj, a, aggregate(r.traj, r.power, b, r.sys)), ValidationError);
}
