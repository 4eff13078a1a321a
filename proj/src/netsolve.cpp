#include "equistab/netsolve.hpp"

#include "equistab/errors.hpp"

#include <cmath>
#include <string>

namespace equistab {

void electrical_power_into(std::span<const double> angles, const ReducedNetwork& net,
                           std::span<const MachineParams> machines, std::span<double> out) {
    const std::size_t n = machines.size();
    if (angles.size() != n || out.size() != n || net.conductance_G.size() != n ||
        net.susceptance_B.size() != n) {
        throw ValidationError("electrical_power: dimension mismatch (machines=" + std::to_string(n) +
                              ", angles=" + std::to_string(angles.size()) +
                              ", network=" + std::to_string(net.susceptance_B.size()) + ")");
    }
    const DenseMatrix& G = net.conductance_G;
    const DenseMatrix& B = net.susceptance_B;
    for (std::size_t i = 0; i < n; ++i) {
        const double ei = machines[i].emf_E;
        double pe = ei * ei * G(i, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            const double dij = angles[i] - angles[j];
            pe += ei * machines[j].emf_E * (B(i, j) * std::sin(dij) + G(i, j) * std::cos(dij));
        }
        out[i] = pe;
    }
}

PowerVector electrical_power(std::span<const double> angles, const ReducedNetwork& net,
                             std::span<const MachineParams> machines) {
    PowerVector pe(machines.size());
    electrical_power_into(angles, net, machines, pe);
    return pe;
}

}  // namespace equistab
