#pragma once

// Machines, reduced networks, study scenarios and simulated trajectories.
//
// Units: angles in rad (synchronous reference), speeds in rad/s deviation from
// synchronous, powers and admittances per-unit, inertia M in pu·s²/rad.

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace equistab {

using MachineId = int;

struct MachineParams {
    MachineId id = 0;
    double inertia_M = 0.0;
    double emf_E = 0.0;
    double pm = 0.0;
};

/// Square row-major matrix indexed in machine order.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Classical-model admittance reduced to machine internal nodes.
struct ReducedNetwork {
    DenseMatrix conductance_G;
    DenseMatrix susceptance_B;
};

enum class Stage { Prefault = 0, Fault = 1, Postfault = 2 };

const char* to_string(Stage stage);

struct Scenario {
    std::vector<MachineParams> machines;
    std::vector<double> initial_angles;
    std::vector<double> initial_speeds;
    std::array<ReducedNetwork, 3> networks;  // indexed by Stage
    double t_clear = 0.0;
    double t_end = 0.0;
    double dt = 1e-3;

    std::size_t machine_count() const noexcept { return machines.size(); }
    const ReducedNetwork& network(Stage stage) const { return networks[static_cast<int>(stage)]; }
    ReducedNetwork& network(Stage stage) { return networks[static_cast<int>(stage)]; }
    /// Position of a machine id in machine order; throws std::out_of_range when absent.
    std::size_t index_of(MachineId id) const;
};

/// Raw synchronous-reference trajectory of the original multi-machine system.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> delta;  // [sample][machine]
    std::vector<std::vector<double>> omega;  // [sample][machine]
    /// Sample indices at which a network stage becomes active: {0 (fault), clearing sample}.
    std::vector<std::size_t> stage_marks;
    std::vector<double> machine_ms;
    std::vector<MachineId> machine_ids;

    std::size_t sample_count() const noexcept { return times.size(); }
    std::size_t machine_count() const noexcept { return machine_ms.size(); }
    std::size_t clearing_index() const { return stage_marks.at(1); }
    double t_clear() const { return times.at(clearing_index()); }
    /// Network stage governing the interval that starts at sample k.
    Stage stage_at(std::size_t k) const { return k < clearing_index() ? Stage::Fault : Stage::Postfault; }
};

/// Every violated invariant, one human-readable line each. Empty means valid.
std::vector<std::string> validate(const Scenario& scenario);

/// Throws ValidationError listing all violations.
void require_valid(const Scenario& scenario);

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Serialize in the scenario file format; numbers are written round-trip exact.
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace equistab
