#pragma once

#include "equistab/eqmach.hpp"

#include <numbers>
#include <vector>

namespace equistab {

/// Separation of each real machine from its own group's equivalent machine:
/// δ_i − δ_CR for i ∈ Ω_CR and δ_j − δ_NCR for j ∈ Ω_NCR.
struct InnerMotionSeries {
    GroupPattern pattern;
    std::vector<double> times;
    std::vector<MachineId> ids;                 // machine order
    std::vector<bool> in_cr;
    std::vector<double> inertia;
    std::vector<std::vector<double>> offset;    // [machine][sample]
    std::vector<double> max_abs_excursion;      // per machine, whole trajectory
};

InnerMotionSeries inner_motion(const Trajectory& traj, const GroupPattern& pattern, const EquivalentSeries& eq);

enum class Fierceness { Slight, Fierce };

const char* to_string(Fierceness f);

struct FiercenessReport {
    double threshold = std::numbers::pi;
    Fierceness cr = Fierceness::Slight;
    Fierceness ncr = Fierceness::Slight;
    /// False once any inner-group motion is fierce: the equivalent-system margin
    /// then understates the original system's severity.
    bool severity_trusted = true;
    MachineId worst_machine = 0;
    double worst_excursion = 0.0;
};

/// Fierce iff some member's excursion reaches `threshold` (closed boundary).
FiercenessReport classify_fierceness(const InnerMotionSeries& series, double threshold = std::numbers::pi);

}  // namespace equistab
