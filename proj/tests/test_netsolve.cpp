#include "equistab/errors.hpp"
#include "equistab/netsolve.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace equistab;

namespace {

ReducedNetwork lossless(std::size_t n, double b) {
    ReducedNetwork net{DenseMatrix(n), DenseMatrix(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) net.susceptance_B(i, j) = b;
    return net;
}

std::vector<MachineParams> unit_machines(std::size_t n) {
    std::vector<MachineParams> m;
    for (std::size_t i = 0; i < n; ++i) m.push_back({static_cast<MachineId>(i + 1), 1.0, 1.0, 0.0});
    return m;
}

}  // namespace

TEST_CASE("single uncoupled machine draws nothing") {
    const auto pe = electrical_power(std::vector<double>{0.7}, ReducedNetwork{DenseMatrix(1), DenseMatrix(1)},
                                     unit_machines(1));
    CHECK(pe == PowerVector{0.0});
}

TEST_CASE("two machines in phase exchange nothing") {
    const auto pe = electrical_power(std::vector<double>{0.4, 0.4}, lossless(2, 1.0), unit_machines(2));
    CHECK(pe[0] == 0.0);
    CHECK(pe[1] == 0.0);
}

TEST_CASE("two machines thirty degrees apart on a 0.5 link") {
    // 1·1·0.5·sin(π/6) = 0.25 leaves machine 1 and arrives at machine 2.
    const auto pe = electrical_power(std::vector<double>{std::numbers::pi / 6.0, 0.0}, lossless(2, 0.5),
                                     unit_machines(2));
    CHECK(pe[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pe[1] == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("self-conductance and transfer conductance terms") {
    ReducedNetwork net{DenseMatrix(2), DenseMatrix(2)};
    net.conductance_G(0, 0) = 0.2;
    net.conductance_G(0, 1) = net.conductance_G(1, 0) = 0.1;
    std::vector<MachineParams> m = {{1, 1.0, 1.1, 0.0}, {2, 1.0, 0.9, 0.0}};
    const auto pe = electrical_power(std::vector<double>{0.3, -0.1}, net, m);
    CHECK(pe[0] == doctest::Approx(1.1 * 1.1 * 0.2 + 1.1 * 0.9 * 0.1 * std::cos(0.4)));
    CHECK(pe[1] == doctest::Approx(1.1 * 0.9 * 0.1 * std::cos(-0.4)));
}

TEST_CASE("lossless power sums to zero and ignores a uniform shift") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 7;
        ReducedNetwork net{DenseMatrix(n), DenseMatrix(n)};
        std::vector<MachineParams> m = unit_machines(n);
        for (std::size_t i = 0; i < n; ++i) {
            m[i].emf_E = 0.9 + 0.05 * (u(rng) + 3.0);
            for (std::size_t j = i + 1; j < n; ++j) net.susceptance_B(i, j) = net.susceptance_B(j, i) = u(rng);
        }
        std::vector<double> d(n);
        for (double& x : d) x = u(rng);
        const auto pe = electrical_power(d, net, m);
        CHECK(std::abs(std::accumulate(pe.begin(), pe.end(), 0.0)) <= 1e-12);

        const double c = u(rng) * 10.0;
        std::vector<double> shifted(d);
        for (double& x : shifted) x += c;
        const auto ps = electrical_power(shifted, net, m);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ps[i] - pe[i]) <= 1e-12);
    }
}

TEST_CASE("agrees with the test-side injection formula on a fixture") {
    const Scenario s = load_scenario(oracle::fixture("three_machine_stable.json"));
    const std::vector<double> d = {0.3, -1.2, 2.5};
    const auto got = electrical_power(d, s.network(Stage::Fault), s.machines);
    const auto want = oracle::injections(s, s.network(Stage::Fault), d);
    for (std::size_t i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));
}

TEST_CASE("dimension mismatch is a validation error") {
    CHECK_THROWS_AS(electrical_power(std::vector<double>{0.0, 0.1, 0.2}, lossless(2, 1.0), unit_machines(2)),
                    ValidationError);
    CHECK_THROWS_AS(electrical_power(std::vector<double>{0.0, 0.1}, lossless(2, 1.0), unit_machines(3)),
                    ValidationError);
}
