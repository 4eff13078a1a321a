#include "equistab/innergroup.hpp"

#include "equistab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace equistab {

const char* to_string(Fierceness f) { return f == Fierceness::Fierce ? "fierce" : "slight"; }

InnerMotionSeries inner_motion(const Trajectory& traj, const GroupPattern& pattern, const EquivalentSeries& eq) {
    require_valid_pattern(pattern, traj.machine_ids);
    if (eq.times.size() != traj.sample_count() || !(eq.pattern == pattern)) {
        throw ValidationError("inner_motion: equivalent series does not match the trajectory and pattern");
    }
    InnerMotionSeries out;
    out.pattern = pattern;
    out.times = traj.times;
    const std::size_t n = traj.machine_count();
    for (std::size_t i = 0; i < n; ++i) {
        const MachineId id = traj.machine_ids[i];
        const bool cr = std::binary_search(pattern.omega_cr.begin(), pattern.omega_cr.end(), id);
        const std::vector<double>& centre = cr ? eq.delta_cr : eq.delta_ncr;
        std::vector<double> offset(traj.sample_count());
        double worst = 0.0;
        for (std::size_t k = 0; k < traj.sample_count(); ++k) {
            offset[k] = traj.delta[k][i] - centre[k];
            worst = std::max(worst, std::abs(offset[k]));
        }
        out.ids.push_back(id);
        out.in_cr.push_back(cr);
        out.inertia.push_back(traj.machine_ms[i]);
        out.offset.push_back(std::move(offset));
        out.max_abs_excursion.push_back(worst);
    }
    return out;
}

FiercenessReport classify_fierceness(const InnerMotionSeries& series, double threshold) {
    FiercenessReport r;
    r.threshold = threshold;
    for (std::size_t i = 0; i < series.ids.size(); ++i) {
        const double x = series.max_abs_excursion[i];
        if (x >= threshold) {
            (series.in_cr[i] ? r.cr : r.ncr) = Fierceness::Fierce;
        }
        if (x > r.worst_excursion || i == 0) {
            r.worst_excursion = x;
            r.worst_machine = series.ids[i];
        }
    }
    r.severity_trusted = r.cr == Fierceness::Slight && r.ncr == Fierceness::Slight;
    return r;
}

}  // namespace equistab
