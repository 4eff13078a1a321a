#include "equistab/sim.hpp"

#include "equistab/errors.hpp"

#include <cmath>
#include <span>
#include <string>

namespace equistab {
namespace {

class SwingSystem {
public:
    explicit SwingSystem(const Scenario& s) : machines_(s.machines), n_(s.machines.size()), pe_(n_) {}

    std::size_t dim() const noexcept { return 2 * n_; }

    // y = [δ_1..δ_n, ω_1..ω_n]
    void derivative(const ReducedNetwork& net, std::span<const double> y, std::span<double> dy) {
        electrical_power_into(y.first(n_), net, machines_, pe_);
        for (std::size_t i = 0; i < n_; ++i) {
            dy[i] = y[n_ + i];
            dy[n_ + i] = (machines_[i].pm - pe_[i]) / machines_[i].inertia_M;
        }
    }

private:
    std::span<const MachineParams> machines_;
    std::size_t n_;
    std::vector<double> pe_;
};

class Rk4Stepper {
public:
    explicit Rk4Stepper(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    void step(SwingSystem& sys, const ReducedNetwork& net, std::vector<double>& y, double h) {
        const std::size_t d = y.size();
        sys.derivative(net, y, k1_);
        for (std::size_t i = 0; i < d; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
        sys.derivative(net, tmp_, k2_);
        for (std::size_t i = 0; i < d; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
        sys.derivative(net, tmp_, k3_);
        for (std::size_t i = 0; i < d; ++i) tmp_[i] = y[i] + h * k3_[i];
        sys.derivative(net, tmp_, k4_);
        for (std::size_t i = 0; i < d; ++i) {
            y[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        }
    }

private:
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

// Number of steps of nominal size h needed to cover [a, b]; the last one may be shorter.
std::size_t stage_steps(double a, double b, double h) {
    const double ratio = (b - a) / h;
    return static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9)));
}

void record(Trajectory& traj, double t, const std::vector<double>& y, std::size_t n) {
    traj.times.push_back(t);
    traj.delta.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    traj.omega.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
}

void check_finite(const std::vector<double>& y, double t, const Scenario& s) {
    const std::size_t n = s.machines.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i])) {
            throw NumericError("non-finite state at t=" + std::to_string(t) + " s on machine " +
                               std::to_string(s.machines[i % n].id));
        }
    }
}

Trajectory integrate(const Scenario& s, double h) {
    require_valid(s);
    const std::size_t n = s.machines.size();
    SwingSystem sys(s);
    Rk4Stepper stepper(sys.dim());

    std::vector<double> y(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = s.initial_angles[i];
        y[n + i] = s.initial_speeds[i];
    }

    Trajectory traj;
    for (const MachineParams& m : s.machines) {
        traj.machine_ms.push_back(m.inertia_M);
        traj.machine_ids.push_back(m.id);
    }
    traj.stage_marks.push_back(0);
    record(traj, 0.0, y, n);

    struct Span {
        Stage stage;
        double start;
        double stop;
    };
    const Span spans[] = {{Stage::Fault, 0.0, s.t_clear}, {Stage::Postfault, s.t_clear, s.t_end}};
    for (const Span& span : spans) {
        if (span.stage == Stage::Postfault) {
            traj.stage_marks.push_back(traj.times.size() - 1);
        }
        const ReducedNetwork& net = s.network(span.stage);
        const std::size_t steps = stage_steps(span.start, span.stop, h);
        double t = span.start;
        for (std::size_t k = 1; k <= steps; ++k) {
            const double t_next = (k == steps) ? span.stop : span.start + static_cast<double>(k) * h;
            stepper.step(sys, net, y, t_next - t);
            check_finite(y, t_next, s);
            t = t_next;
            record(traj, t, y, n);
        }
    }
    return traj;
}

}  // namespace

Trajectory simulate(const Scenario& scenario) { return integrate(scenario, scenario.dt); }

Trajectory refine_dt(const Scenario& scenario, int factor) {
    if (factor < 1) {
        throw ValidationError("refine_dt: factor must be >= 1");
    }
    return integrate(scenario, scenario.dt / factor);
}

PowerSeries power_series(const Scenario& scenario, const Trajectory& traj) {
    PowerSeries out;
    for (const MachineParams& m : scenario.machines) {
        out.pm.push_back(m.pm);
    }
    out.pe.reserve(traj.sample_count());
    for (std::size_t k = 0; k < traj.sample_count(); ++k) {
        out.pe.push_back(electrical_power(traj.delta[k], scenario.network(traj.stage_at(k)), scenario.machines));
    }
    return out;
}

}  // namespace equistab
