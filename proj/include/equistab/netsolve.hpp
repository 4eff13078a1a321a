#pragma once

#include "equistab/model.hpp"

#include <span>
#include <vector>

namespace equistab {

/// Per-machine electrical power P_ei, per-unit, in machine order.
using PowerVector = std::vector<double>;

/// Classical-model injection
///   P_ei = E_i² G_ii + Σ_{j≠i} E_i E_j (B_ij sin δ_ij + G_ij cos δ_ij).
/// Throws ValidationError on dimension mismatch.
PowerVector electrical_power(std::span<const double> angles, const ReducedNetwork& net,
                             std::span<const MachineParams> machines);

/// Allocation-free variant used by the integrator; `out` must already be sized.
void electrical_power_into(std::span<const double> angles, const ReducedNetwork& net,
                           std::span<const MachineParams> machines, std::span<double> out);

}  // namespace equistab
