#include "equistab/eqmach.hpp"

#include "equistab/errors.hpp"
#include "series_math.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <tuple>

namespace equistab {
namespace {

std::vector<std::size_t> member_indices(const std::vector<MachineId>& ids, const std::vector<MachineId>& order) {
    std::vector<std::size_t> out;
    for (MachineId id : ids) {
        out.push_back(static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin()));
    }
    return out;
}

std::size_t widest_spread_sample(const Trajectory& traj) {
    std::size_t best = 0;
    double widest = -1.0;
    for (std::size_t k = 0; k < traj.sample_count(); ++k) {
        const auto [lo, hi] = std::minmax_element(traj.delta[k].begin(), traj.delta[k].end());
        if (*hi - *lo > widest) {
            widest = *hi - *lo;
            best = k;
        }
    }
    return best;
}

// Dominance rank: lower tuples win.
std::tuple<int, double, std::size_t, std::vector<MachineId>> rank_key(const PatternResult& r) {
    const MarginReport& m = r.margin;
    if (m.untouched) {
        return {2, 0.0, r.pattern.omega_cr.size(), r.pattern.omega_cr};
    }
    if (m.verdict == Verdict::UndeterminedHorizon) {
        return {1, -r.max_excursion, r.pattern.omega_cr.size(), r.pattern.omega_cr};
    }
    return {0, m.eta, r.pattern.omega_cr.size(), r.pattern.omega_cr};
}

}  // namespace

GroupAggregate aggregate_values(std::span<const double> inertia, std::span<const double> delta,
                                std::span<const double> omega, std::span<const double> accel) {
    if (inertia.empty() || delta.size() != inertia.size() || omega.size() != inertia.size() ||
        (!accel.empty() && accel.size() != inertia.size())) {
        throw ValidationError("aggregate_values: member arrays must be nonempty and equally long");
    }
    GroupAggregate g;
    for (std::size_t i = 0; i < inertia.size(); ++i) {
        g.inertia += inertia[i];
        g.delta += inertia[i] * delta[i];
        g.omega += inertia[i] * omega[i];
        if (!accel.empty()) {
            g.power += accel[i];
        }
    }
    g.delta /= g.inertia;
    g.omega /= g.inertia;
    return g;
}

EquivalentSeries aggregate(const Trajectory& traj, const PowerSeries& power, const GroupPattern& pattern) {
    const auto machine_sys = to_coi_sys(traj, power);
    return aggregate(traj, power, pattern, machine_sys);
}

EquivalentSeries aggregate(const Trajectory& traj, const PowerSeries& power, const GroupPattern& pattern,
                           std::span<const FrameSeries> machine_sys) {
    require_valid_pattern(pattern, traj.machine_ids);
    const auto cr = member_indices(pattern.omega_cr, traj.machine_ids);
    const auto ncr = member_indices(pattern.omega_ncr, traj.machine_ids);

    EquivalentSeries eq;
    eq.pattern = pattern;
    eq.times = traj.times;
    eq.clearing_index = traj.clearing_index();
    const std::size_t samples = traj.sample_count();
    for (auto* v : {&eq.delta_cr, &eq.omega_cr, &eq.p_cr, &eq.delta_ncr, &eq.omega_ncr, &eq.p_ncr}) {
        v->resize(samples);
    }

    std::vector<double> m, d, w, a;
    auto fill = [&](const std::vector<std::size_t>& members, std::size_t k) {
        m.clear(); d.clear(); w.clear(); a.clear();
        for (std::size_t i : members) {
            m.push_back(traj.machine_ms[i]);
            d.push_back(traj.delta[k][i]);
            w.push_back(traj.omega[k][i]);
            a.push_back(power.accel(k, i));
        }
        return aggregate_values(m, d, w, a);
    };
    for (std::size_t k = 0; k < samples; ++k) {
        const GroupAggregate g_cr = fill(cr, k);
        const GroupAggregate g_ncr = fill(ncr, k);
        eq.m_cr = g_cr.inertia;
        eq.m_ncr = g_ncr.inertia;
        eq.delta_cr[k] = g_cr.delta;
        eq.omega_cr[k] = g_cr.omega;
        eq.p_cr[k] = g_cr.power;
        eq.delta_ncr[k] = g_ncr.delta;
        eq.omega_ncr[k] = g_ncr.omega;
        eq.p_ncr[k] = g_ncr.power;
    }
    eq.m_sys = eq.m_cr + eq.m_ncr;

    eq.cr_ncr = to_coi_ncr(traj, pattern, power);
    eq.cr_sys = aggregate_coi_sys(machine_sys, cr, "CR");
    eq.ncr_sys = aggregate_coi_sys(machine_sys, ncr, "NCR");
    return eq;
}

double EnergySeries::drift() const {
    double worst = 0.0;
    for (double v : v_total) {
        worst = std::max(worst, std::abs(v - v_total.front()));
    }
    return worst;
}

EnergySeries energy(const EquivalentSeries& eq) {
    const FrameSeries& s = eq.cr_ncr;
    const std::size_t c = s.clearing_index;
    EnergySeries e;
    const auto area = detail::cumulative_decel_area(s.times, s.f, s.omega, c);
    for (std::size_t k = c; k < s.size(); ++k) {
        const double ke = 0.5 * eq.m_cr * s.omega[k] * s.omega[k];
        e.times.push_back(s.times[k]);
        e.v_ke.push_back(ke);
        e.v_pe.push_back(area[k - c]);
        e.v_total.push_back(ke + area[k - c]);
    }
    return e;
}

MarginReport equivalent_margin(const EquivalentSeries& eq, EquivalentFrame frame, const MarginOptions& options) {
    const FrameSeries& s = frame == EquivalentFrame::CrNcr ? eq.cr_ncr : eq.cr_sys;
    return machine_margin(s, options);
}

std::vector<GroupPattern> enumerate_patterns(const Trajectory& traj, PatternMode mode) {
    const std::size_t n = traj.machine_count();
    if (n < 2) {
        throw ValidationError("enumerate_patterns: at least two machines are required");
    }
    if (mode == PatternMode::Exhaustive && n > 20) {
        throw ValidationError("enumerate_patterns: exhaustive mode is limited to 20 machines");
    }
    const std::size_t k = widest_spread_sample(traj);
    const std::vector<double>& angle = traj.delta[k];

    std::vector<GroupPattern> out;
    if (mode == PatternMode::AngleCuts) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (angle[a] != angle[b]) return angle[a] > angle[b];
            return traj.machine_ids[a] < traj.machine_ids[b];
        });
        std::vector<MachineId> lead;
        for (std::size_t cut = 1; cut < n; ++cut) {
            lead.push_back(traj.machine_ids[order[cut - 1]]);
            out.push_back(GroupPattern::from_critical(lead, traj.machine_ids));
        }
        return out;
    }

    const std::uint32_t count = 1u << (n - 1);
    for (std::uint32_t mask = 1; mask < count; ++mask) {
        std::vector<MachineId> side_a;
        std::vector<MachineId> side_b;
        double ma = 0.0, da = 0.0, mb = 0.0, db = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Machine 0 always sits on side b so every bipartition appears once.
            const bool on_a = i > 0 && ((mask >> (i - 1)) & 1u);
            const double mi = traj.machine_ms[i];
            if (on_a) {
                side_a.push_back(traj.machine_ids[i]);
                ma += mi;
                da += mi * angle[i];
            } else {
                side_b.push_back(traj.machine_ids[i]);
                mb += mi;
                db += mi * angle[i];
            }
        }
        const bool a_leads = da / ma >= db / mb;
        out.push_back(GroupPattern::from_critical(a_leads ? side_a : side_b, traj.machine_ids));
    }
    return out;
}

PatternResult evaluate_pattern(const Trajectory& traj, const PowerSeries& power, const GroupPattern& pattern,
                               std::span<const FrameSeries> machine_sys, const MarginOptions& options) {
    const EquivalentSeries eq = aggregate(traj, power, pattern, machine_sys);
    PatternResult r;
    r.pattern = pattern;
    r.events = detect_events(eq.cr_ncr);
    r.margin = machine_margin(eq.cr_ncr, r.events, options);
    for (std::size_t k = eq.clearing_index; k < eq.cr_ncr.size(); ++k) {
        r.max_excursion = std::max(r.max_excursion, std::abs(eq.cr_ncr.delta[k]));
    }
    return r;
}

std::vector<PatternResult> evaluate_patterns(const Trajectory& traj, const PowerSeries& power,
                                             std::span<const GroupPattern> patterns,
                                             std::span<const FrameSeries> machine_sys, unsigned threads,
                                             const MarginOptions& options) {
    std::vector<PatternResult> results(patterns.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(patterns.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            results[i] = evaluate_pattern(traj, power, patterns[i], machine_sys, options);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (std::size_t i = next++; i < patterns.size(); i = next++) {
            try {
                results[i] = evaluate_pattern(traj, power, patterns[i], machine_sys, options);
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

const PatternResult& dominant_pattern(std::span<const PatternResult> results) {
    if (results.empty()) {
        throw ValidationError("dominant_pattern: no candidate patterns");
    }
    const PatternResult* best = &results.front();
    auto best_key = rank_key(*best);
    for (const PatternResult& r : results.subspan(1)) {
        auto key = rank_key(r);
        if (key < best_key) {
            best = &r;
            best_key = std::move(key);
        }
    }
    return *best;
}

CctProbe probe_clearing_time(const Scenario& scenario, double t_clear, const CctOptions& options) {
    Scenario probe = scenario;
    probe.t_clear = t_clear;
    const Trajectory traj = simulate(probe);
    const PowerSeries power = power_series(probe, traj);
    const auto machine_sys = to_coi_sys(traj, power);
    const auto patterns = enumerate_patterns(traj, options.mode);
    const auto results = evaluate_patterns(traj, power, patterns, machine_sys, options.threads, options.margin);
    const PatternResult& dom = dominant_pattern(results);
    const bool unstable = dom.margin.terminating_event && dom.margin.terminating_event->kind == EventKind::DLP;
    return CctProbe{t_clear, dom.margin.verdict, dom.margin.eta, unstable, dom.pattern};
}

namespace {

bool probe_unstable(const Scenario& scenario, double t_clear, const CctOptions& options, CctResult& out) {
    out.history.push_back(probe_clearing_time(scenario, t_clear, options));
    return out.history.back().unstable;
}

}  // namespace

CctResult find_cct(const Scenario& scenario, double t_lo, double t_hi, double tol, const CctOptions& options) {
    if (!(t_lo < t_hi)) {
        throw BracketError("find_cct: bracket must satisfy t_lo < t_hi (got " + std::to_string(t_lo) + ", " +
                           std::to_string(t_hi) + ")");
    }
    if (!(tol > 0.0)) {
        throw BracketError("find_cct: tolerance must be positive");
    }
    if (t_lo < scenario.dt || !(t_hi < scenario.t_end)) {
        throw BracketError("find_cct: bracket must lie within [dt, t_end)");
    }
    CctResult out;
    const bool lo_unstable = probe_unstable(scenario, t_lo, options, out);
    const bool hi_unstable = probe_unstable(scenario, t_hi, options, out);
    if (lo_unstable || !hi_unstable) {
        throw BracketError(std::string("find_cct: bracket does not straddle the stability boundary (t_lo=") +
                           std::to_string(t_lo) + " s: " + to_string(out.history[0].verdict) +
                           ", t_hi=" + std::to_string(t_hi) + " s: " + to_string(out.history[1].verdict) + ")");
    }
    while (t_hi - t_lo > tol) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (probe_unstable(scenario, mid, options, out)) {
            t_hi = mid;
        } else {
            t_lo = mid;
        }
    }
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    out.cct = 0.5 * (t_lo + t_hi);
    return out;
}

}  // namespace equistab
