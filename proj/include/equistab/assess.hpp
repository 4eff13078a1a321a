#pragma once

// Whole-scenario analysis: individual machines under the unity principle side by
// side with the dominant equivalent machine.

#include "equistab/eqmach.hpp"
#include "equistab/frames.hpp"
#include "equistab/indmach.hpp"
#include "equistab/innergroup.hpp"
#include "equistab/model.hpp"
#include "equistab/sim.hpp"

#include <numbers>
#include <optional>
#include <vector>

namespace equistab {

struct AssessOptions {
    PatternMode mode = PatternMode::AngleCuts;
    std::optional<GroupPattern> pattern;   // skips enumeration when set
    unsigned threads = 1;
    MarginOptions margin;
    double monitor_fraction = 0.05;
    double fierceness_threshold = std::numbers::pi;
};

struct Assessment {
    Trajectory traj;
    PowerSeries power;
    std::vector<FrameSeries> machine_sys;
    std::vector<std::vector<SwingEvent>> machine_events;
    std::vector<MarginReport> machine_reports;
    std::vector<std::size_t> monitored;
    SystemVerdict unity;

    std::vector<PatternResult> patterns;
    std::size_t dominant = 0;
    EquivalentSeries dominant_series;
    MarginReport dominant_cr_sys;     // the same margin read from the mirror system
    MirrorResiduals mirror;
    InnerMotionSeries inner;
    FiercenessReport fierceness;

    const PatternResult& dominant_result() const { return patterns[dominant]; }
};

Assessment assess(const Scenario& scenario, const AssessOptions& options = {});

}  // namespace equistab
