#include "equistab/frames.hpp"

#include "equistab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace equistab {
namespace {

std::vector<std::size_t> indices_of(const std::vector<MachineId>& ids, const std::vector<MachineId>& order) {
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (MachineId id : ids) {
        const auto it = std::find(order.begin(), order.end(), id);
        out.push_back(static_cast<std::size_t>(it - order.begin()));
    }
    return out;
}

void require_aligned(const Trajectory& traj, const PowerSeries& power) {
    if (power.pe.size() != traj.sample_count() || power.pm.size() != traj.machine_count()) {
        throw ValidationError("power series is not aligned with the trajectory samples");
    }
}

// Mass-weighted angle/speed and summed accelerating power of a machine subset, sample k.
struct GroupState {
    double mass = 0.0;
    double delta = 0.0;
    double omega = 0.0;
    double accel = 0.0;
};

GroupState group_state(const Trajectory& traj, const PowerSeries& power, std::span<const std::size_t> members,
                       std::size_t k) {
    GroupState g;
    for (std::size_t i : members) {
        const double m = traj.machine_ms[i];
        g.mass += m;
        g.delta += m * traj.delta[k][i];
        g.omega += m * traj.omega[k][i];
        g.accel += power.accel(k, i);
    }
    g.delta /= g.mass;
    g.omega /= g.mass;
    return g;
}

double term_scale(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

}  // namespace

const char* to_string(FrameTag tag) {
    switch (tag) {
        case FrameTag::Synchronous: return "SYN";
        case FrameTag::CoiSys: return "COI-SYS";
        case FrameTag::CoiNcr: return "COI-NCR";
    }
    return "?";
}

double MirrorResiduals::max_relative() const { return *std::max_element(relative.begin(), relative.end()); }

std::vector<FrameSeries> to_coi_sys(const Trajectory& traj, const PowerSeries& power) {
    require_aligned(traj, power);
    const std::size_t n = traj.machine_count();
    const std::size_t samples = traj.sample_count();

    std::vector<FrameSeries> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        FrameSeries& s = out[i];
        s.frame = FrameTag::CoiSys;
        s.subject = std::to_string(traj.machine_ids[i]);
        s.inertia = traj.machine_ms[i];
        s.clearing_index = traj.clearing_index();
        s.times = traj.times;
        s.delta.resize(samples);
        s.omega.resize(samples);
        s.f.resize(samples);
    }

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const double m_sys = group_state(traj, power, all, 0).mass;
    for (std::size_t i = 0; i < n; ++i) {
        const double rest = m_sys - traj.machine_ms[i];
        out[i].angle_scale = rest > 0.0 ? m_sys / rest : 1.0;
    }

    for (std::size_t k = 0; k < samples; ++k) {
        const GroupState sys = group_state(traj, power, all, k);
        for (std::size_t i = 0; i < n; ++i) {
            out[i].delta[k] = traj.delta[k][i] - sys.delta;
            out[i].omega[k] = traj.omega[k][i] - sys.omega;
            out[i].f[k] = power.accel(k, i) - traj.machine_ms[i] / sys.mass * sys.accel;
        }
    }
    return out;
}

FrameSeries aggregate_coi_sys(std::span<const FrameSeries> machine_series, std::span<const std::size_t> members,
                              std::string subject) {
    if (members.empty()) {
        throw ValidationError("aggregate_coi_sys: empty group");
    }
    const FrameSeries& first = machine_series[members.front()];
    FrameSeries g;
    g.frame = FrameTag::CoiSys;
    g.subject = std::move(subject);
    g.clearing_index = first.clearing_index;
    g.times = first.times;
    const std::size_t samples = first.size();
    g.delta.assign(samples, 0.0);
    g.omega.assign(samples, 0.0);
    g.f.assign(samples, 0.0);
    for (std::size_t i : members) {
        const FrameSeries& m = machine_series[i];
        if (m.size() != samples) {
            throw ValidationError("aggregate_coi_sys: series are not aligned");
        }
        g.inertia += m.inertia;
        for (std::size_t k = 0; k < samples; ++k) {
            g.delta[k] += m.inertia * m.delta[k];
            g.omega[k] += m.inertia * m.omega[k];
            g.f[k] += m.f[k];
        }
    }
    for (std::size_t k = 0; k < samples; ++k) {
        g.delta[k] /= g.inertia;
        g.omega[k] /= g.inertia;
    }
    double m_sys = 0.0;
    for (const FrameSeries& m : machine_series) {
        m_sys += m.inertia;
    }
    g.angle_scale = m_sys > g.inertia ? m_sys / (m_sys - g.inertia) : 1.0;
    return g;
}

FrameSeries to_coi_ncr(const Trajectory& traj, const GroupPattern& pattern, const PowerSeries& power) {
    require_aligned(traj, power);
    require_valid_pattern(pattern, traj.machine_ids);
    const auto cr = indices_of(pattern.omega_cr, traj.machine_ids);
    const auto ncr = indices_of(pattern.omega_ncr, traj.machine_ids);

    FrameSeries s;
    s.frame = FrameTag::CoiNcr;
    s.subject = "CR";
    s.clearing_index = traj.clearing_index();
    s.times = traj.times;
    const std::size_t samples = traj.sample_count();
    s.delta.resize(samples);
    s.omega.resize(samples);
    s.f.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const GroupState a = group_state(traj, power, cr, k);
        const GroupState b = group_state(traj, power, ncr, k);
        s.inertia = a.mass;
        s.delta[k] = a.delta - b.delta;
        s.omega[k] = a.omega - b.omega;
        s.f[k] = a.accel - a.mass / b.mass * b.accel;
    }
    return s;
}

MirrorResiduals mirror_check(const FrameSeries& cr_sys, const FrameSeries& ncr_sys, const FrameSeries& cr_ncr,
                             double m_cr, double m_ncr, double m_sys) {
    const std::size_t samples = cr_sys.size();
    if (ncr_sys.size() != samples || cr_ncr.size() != samples) {
        throw ValidationError("mirror_check: series are not aligned");
    }
    if (!(m_cr > 0.0) || !(m_ncr > 0.0) || std::abs(m_sys - (m_cr + m_ncr)) > 1e-12 * m_sys) {
        throw ValidationError("mirror_check: mass inconsistency, M_SYS must equal M_CR + M_NCR");
    }

    MirrorResiduals r;
    std::array<double, 6> scale{};
    auto track = [&](double& worst, std::size_t slot, double a, double b) {
        worst = std::max(worst, std::abs(a + b));
        scale[slot] = std::max(scale[slot], term_scale(a, b));
    };
    for (std::size_t k = 0; k < samples; ++k) {
        track(r.cr_ncr_delta_sum, 0, m_cr * cr_sys.delta[k], m_ncr * ncr_sys.delta[k]);
        track(r.cr_ncr_omega_sum, 1, m_cr * cr_sys.omega[k], m_ncr * ncr_sys.omega[k]);
        track(r.f_sum, 2, cr_sys.f[k], ncr_sys.f[k]);
        track(r.scaled_delta, 3, m_ncr * cr_ncr.delta[k], -m_sys * cr_sys.delta[k]);
        track(r.scaled_omega, 4, m_ncr * cr_ncr.omega[k], -m_sys * cr_sys.omega[k]);
        track(r.scaled_f, 5, m_ncr * cr_ncr.f[k], -m_sys * cr_sys.f[k]);
    }
    const auto abs = r.absolute();
    for (std::size_t i = 0; i < 6; ++i) {
        r.relative[i] = scale[i] > 0.0 ? abs[i] / scale[i] : abs[i];
    }
    return r;
}

}  // namespace equistab
