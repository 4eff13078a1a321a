#pragma once

#include "equistab/model.hpp"
#include "equistab/netsolve.hpp"

#include <vector>

namespace equistab {

/// Mechanical and electrical power sampled along a trajectory.
struct PowerSeries {
    std::vector<double> pm;                // per machine
    std::vector<std::vector<double>> pe;   // [sample][machine], network of stage_at(k)

    /// Accelerating power P_mi - P_ei at sample k.
    double accel(std::size_t k, std::size_t i) const { return pm[i] - pe[k][i]; }
};

/**
 * Fixed-step RK4 integration of dδ_i/dt = ω_i, M_i dω_i/dt = P_mi − P_ei through
 * the fault and post-fault stages. The fault network is active on [0, t_clear),
 * the post-fault network from t_clear on; a sample lands bit-exactly on t_clear
 * and on t_end by shortening the last step of each stage.
 *
 * Throws ValidationError for an invalid scenario and NumericError when the state
 * stops being finite.
 */
Trajectory simulate(const Scenario& scenario);

/// simulate() with the step divided by `factor` (factor >= 1).
Trajectory refine_dt(const Scenario& scenario, int factor);

/// P_e at every sample, using the network active on the interval starting there
/// (so the clearing sample carries post-fault power).
PowerSeries power_series(const Scenario& scenario, const Trajectory& traj);

}  // namespace equistab
