#include "equistab/assess.hpp"

namespace equistab {

Assessment assess(const Scenario& scenario, const AssessOptions& options) {
    require_valid(scenario);
    Assessment a;
    a.traj = simulate(scenario);
    a.power = power_series(scenario, a.traj);
    a.machine_sys = to_coi_sys(a.traj, a.power);

    for (const FrameSeries& s : a.machine_sys) {
        a.machine_events.push_back(detect_events(s));
        a.machine_reports.push_back(machine_margin(s, a.machine_events.back(), options.margin));
    }
    a.monitored = select_monitored(a.machine_reports, options.monitor_fraction);
    if (a.monitored.empty()) {
        // Nothing was disturbed; every machine stands in.
        for (std::size_t i = 0; i < a.machine_reports.size(); ++i) {
            a.monitored.push_back(i);
        }
    }
    std::vector<MarginReport> watched;
    for (std::size_t i : a.monitored) {
        watched.push_back(a.machine_reports[i]);
    }
    a.unity = unity_verdict(watched);

    std::vector<GroupPattern> candidates;
    if (options.pattern) {
        require_valid_pattern(*options.pattern, a.traj.machine_ids);
        candidates.push_back(*options.pattern);
    } else {
        candidates = enumerate_patterns(a.traj, options.mode);
    }
    a.patterns = evaluate_patterns(a.traj, a.power, candidates, a.machine_sys, options.threads, options.margin);
    const PatternResult& dom = dominant_pattern(a.patterns);
    a.dominant = static_cast<std::size_t>(&dom - a.patterns.data());

    a.dominant_series = aggregate(a.traj, a.power, dom.pattern, a.machine_sys);
    a.dominant_cr_sys = equivalent_margin(a.dominant_series, EquivalentFrame::CrSys, options.margin);
    const EquivalentSeries& eq = a.dominant_series;
    a.mirror = mirror_check(eq.cr_sys, eq.ncr_sys, eq.cr_ncr, eq.m_cr, eq.m_ncr, eq.m_sys);
    a.inner = inner_motion(a.traj, dom.pattern, eq);
    a.fierceness = classify_fierceness(a.inner, options.fierceness_threshold);
    return a;
}

}  // namespace equistab
