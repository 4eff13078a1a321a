#include "equistab/eqmach.hpp"
#include "equistab/errors.hpp"
#include "equistab/frames.hpp"
#include "equistab/sim.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace equistab;

namespace {

struct Run {
    Scenario scenario;
    Trajectory traj;
    PowerSeries power;
};

Run run(const char* name) {
    Run r{load_scenario(oracle::fixture(name)), {}, {}};
    r.traj = simulate(r.scenario);
    r.power = power_series(r.scenario, r.traj);
    return r;
}

// Hand-made trajectory with zero power everywhere.
Trajectory manual(std::vector<double> ms, std::vector<std::vector<double>> delta, std::vector<std::vector<double>> omega) {
    Trajectory t;
    t.machine_ms = std::move(ms);
    for (std::size_t i = 0; i < t.machine_ms.size(); ++i) t.machine_ids.push_back(static_cast<MachineId>(i + 1));
    for (std::size_t k = 0; k < delta.size(); ++k) t.times.push_back(0.01 * static_cast<double>(k));
    t.delta = std::move(delta);
    t.omega = std::move(omega);
    t.stage_marks = {0, 1};
    return t;
}

PowerSeries idle(const Trajectory& t) {
    PowerSeries p;
    p.pm.assign(t.machine_count(), 0.0);
    p.pe.assign(t.sample_count(), std::vector<double>(t.machine_count(), 0.0));
    return p;
}

}  // namespace

TEST_CASE("identical machines in phase sit on the centre of inertia") {
    const Trajectory t = manual({2.0, 2.0, 2.0}, {{0.4, 0.4, 0.4}, {0.9, 0.9, 0.9}}, {{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}});
    for (const FrameSeries& s : to_coi_sys(t, idle(t))) {
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(std::abs(s.delta[k]) <= 1e-15);
            CHECK(std::abs(s.omega[k]) <= 1e-15);
        }
    }
}

TEST_CASE("two equal machines symmetric about zero") {
    const Trajectory t = manual({1.0, 1.0}, {{0.3, -0.3}}, {{0.0, 0.0}});
    const auto s = to_coi_sys(t, idle(t));
    CHECK(s[0].delta[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(s[1].delta[0] == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(s[0].subject == "1");
    CHECK(s[0].frame == FrameTag::CoiSys);
}

TEST_CASE("two-member COI speeds cancel within their rounding") {
    // 60.6·(−0.0005) + 71.6·0.0004 with each speed good to ±0.00005.
    const double sum = 60.6 * -0.0005 + 71.6 * 0.0004;
    CHECK(std::abs(sum) <= 0.00005 * (60.6 + 71.6));
}

TEST_CASE("centre-of-inertia closure on simulated runs") {
    for (const char* name : {"three_machine_stable.json", "three_machine_unstable.json", "runaway.json"}) {
        CAPTURE(name);
        const Run r = run(name);
        const auto sys = to_coi_sys(r.traj, r.power);
        const double m_sys = std::accumulate(r.traj.machine_ms.begin(), r.traj.machine_ms.end(), 0.0);
        for (std::size_t k = 0; k < r.traj.sample_count(); k += 7) {
            double sd = 0.0, sw = 0.0, sf = 0.0, big = 0.0;
            for (std::size_t i = 0; i < sys.size(); ++i) {
                sd += sys[i].inertia * sys[i].delta[k];
                sw += sys[i].inertia * sys[i].omega[k];
                sf += sys[i].f[k];
                for (double d : r.traj.delta[k]) big = std::max(big, std::abs(d));
            }
            CHECK(std::abs(sd) <= 1e-9 * m_sys * std::max(big, 1.0));
            CHECK(std::abs(sw) <= 1e-9 * m_sys * std::max(big, 1.0));
            CHECK(std::abs(sf) <= 1e-9);
        }
    }
}

TEST_CASE("uniform angle shift leaves every relative series unchanged") {
    Run a = run("three_machine_unstable.json");
    Scenario shifted = a.scenario;
    for (double& d : shifted.initial_angles) d += 1.234;
    const Trajectory tb = simulate(shifted);
    const PowerSeries pb = power_series(shifted, tb);
    const auto sa = to_coi_sys(a.traj, a.power);
    const auto sb = to_coi_sys(tb, pb);
    const GroupPattern p = GroupPattern::from_critical({2, 3}, a.traj.machine_ids);
    const FrameSeries na = to_coi_ncr(a.traj, p, a.power);
    const FrameSeries nb = to_coi_ncr(tb, p, pb);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.traj.sample_count(); ++k) {
        for (std::size_t i = 0; i < 3; ++i) {
            worst = std::max({worst, std::abs(sa[i].delta[k] - sb[i].delta[k]), std::abs(sa[i].omega[k] - sb[i].omega[k]),
                              std::abs(sa[i].f[k] - sb[i].f[k])});
        }
        worst = std::max({worst, std::abs(na.delta[k] - nb.delta[k]), std::abs(na.f[k] - nb.f[k])});
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("singleton groups in a two-machine system") {
    const Run r = run("smib.json");
    const GroupPattern p = GroupPattern::from_critical({1}, r.traj.machine_ids);
    const FrameSeries s = to_coi_ncr(r.traj, p, r.power);
    const EquivalentSeries eq = aggregate(r.traj, r.power, p);
    const double ratio = eq.m_sys / eq.m_ncr;
    for (std::size_t k = 0; k < r.traj.sample_count(); ++k) {
        CHECK(s.delta[k] == doctest::Approx(r.traj.delta[k][0] - r.traj.delta[k][1]).epsilon(1e-13));
        CHECK(s.delta[k] == doctest::Approx(ratio * eq.cr_sys.delta[k]).epsilon(1e-12));
        if (std::abs(eq.cr_sys.omega[k]) > 1e-6) {
            CHECK(s.omega[k] / eq.cr_sys.omega[k] == doctest::Approx(ratio).epsilon(1e-9));
        }
    }
}

TEST_CASE("groups moving in phase keep a constant separation") {
    std::vector<std::vector<double>> delta, omega;
    for (int k = 0; k < 20; ++k) {
        const double a = 0.1 * k * k, b = a + 0.7;
        delta.push_back({a, b, a, b});
        omega.push_back({0.2 * k, 0.2 * k, 0.2 * k, 0.2 * k});
    }
    const Trajectory t = manual({1.0, 3.0, 2.0, 5.0}, delta, omega);
    const FrameSeries s = to_coi_ncr(t, GroupPattern::from_critical({2, 4}, t.machine_ids), idle(t));
    for (std::size_t k = 0; k < t.sample_count(); ++k) {
        CHECK(s.delta[k] == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(std::abs(s.omega[k]) <= 1e-12);
    }
}

TEST_CASE("mirror residuals vanish for every pattern of every fixture") {
    for (const char* name : {"smib.json", "three_machine_stable.json", "three_machine_unstable.json", "runaway.json"}) {
        CAPTURE(name);
        const Run r = run(name);
        const auto sys = to_coi_sys(r.traj, r.power);
        for (const GroupPattern& p : enumerate_patterns(r.traj, PatternMode::Exhaustive)) {
            const EquivalentSeries eq = aggregate(r.traj, r.power, p, sys);
            const MirrorResiduals m = mirror_check(eq.cr_sys, eq.ncr_sys, eq.cr_ncr, eq.m_cr, eq.m_ncr, eq.m_sys);
            CHECK(m.max_relative() <= 1e-9);
            // f_CR-SYS is the plain sum of the members' f_i-SYS.
            for (std::size_t k = 0; k < r.traj.sample_count(); k += 11) {
                double sum = 0.0;
                for (MachineId id : p.omega_cr) sum += sys[static_cast<std::size_t>(id - 1)].f[k];
                CHECK(std::abs(eq.cr_sys.f[k] - sum) <= 1e-9);
            }
        }
    }
}

TEST_CASE("equivalent CR-NCR angle equals the mirror-scaled CR-SYS angle on the fixture") {
    const Run r = run("three_machine_stable.json");
    const EquivalentSeries eq = aggregate(r.traj, r.power, GroupPattern::from_critical({2, 3}, r.traj.machine_ids));
    for (std::size_t k = 0; k < r.traj.sample_count(); ++k)
        CHECK(eq.cr_ncr.delta[k] == doctest::Approx(eq.m_sys / eq.m_ncr * eq.cr_sys.delta[k]).epsilon(1e-12));
}

TEST_CASE("member envelope contains the group angle and speed") {
    const Run r = run("three_machine_unstable.json");
    const auto sys = to_coi_sys(r.traj, r.power);
    const std::vector<std::size_t> members = {1, 2};
    const FrameSeries cr = aggregate_coi_sys(sys, members, "CR");
    for (std::size_t k = 0; k < cr.size(); ++k) {
        CHECK(cr.delta[k] >= std::min(sys[1].delta[k], sys[2].delta[k]) - 1e-12);
        CHECK(cr.delta[k] <= std::max(sys[1].delta[k], sys[2].delta[k]) + 1e-12);
        CHECK(cr.omega[k] >= std::min(sys[1].omega[k], sys[2].omega[k]) - 1e-12);
        CHECK(cr.omega[k] <= std::max(sys[1].omega[k], sys[2].omega[k]) + 1e-12);
    }
}

TEST_CASE("mirror_check refuses inconsistent input") {
    const Run r = run("three_machine_stable.json");
    const EquivalentSeries eq = aggregate(r.traj, r.power, GroupPattern::from_critical({2}, r.traj.machine_ids));
    CHECK_THROWS_AS(mirror_check(eq.cr_sys, eq.ncr_sys, eq.cr_ncr, eq.m_cr, eq.m_ncr, eq.m_sys + 1.0), ValidationError);
    FrameSeries shorter = eq.cr_ncr;
    shorter.times.pop_back();
    shorter.delta.pop_back();
    CHECK_THROWS_AS(mirror_check(eq.cr_sys, eq.ncr_sys, shorter, eq.m_cr, eq.m_ncr, eq.m_sys), ValidationError);
    CHECK_THROWS_AS(to_coi_ncr(r.traj, GroupPattern{{2}, {3}}, r.power), ValidationError);
}

TEST_CASE("frame tags") {
    CHECK(std::string(to_string(FrameTag::Synchronous)) == "SYN");
    CHECK(std::string(to_string(FrameTag::CoiSys)) == "COI-SYS");
    CHECK(std::string(to_string(FrameTag::CoiNcr)) == "COI-NCR");
}
