#pragma once

// Reference-frame transforms of a trajectory and the mirror-system identities.
//
// Every series carries f, the frame-relative accelerating power, so that the
// subject obeys dδ/dt = ω and M dω/dt = f in its own frame.

#include "equistab/model.hpp"
#include "equistab/pattern.hpp"
#include "equistab/sim.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace equistab {

enum class FrameTag { Synchronous, CoiSys, CoiNcr };

const char* to_string(FrameTag tag);

struct FrameSeries {
    FrameTag frame = FrameTag::Synchronous;
    std::string subject;   // machine id, "CR", "NCR"
    double inertia = 0.0;  // M in the subject's equation of motion
    /// Factor turning the subject's angle into the two-group separation angle it
    /// mirrors: M_SYS/(M_SYS − M_subject) in COI-SYS, 1 for CR-NCR.
    double angle_scale = 1.0;
    std::size_t clearing_index = 0;
    std::vector<double> times;
    std::vector<double> delta;
    std::vector<double> omega;
    std::vector<double> f;

    std::size_t size() const noexcept { return times.size(); }
};

/// Per-machine series in the system centre-of-inertia frame:
/// δ_i-SYS = δ_i − δ_SYS, ω_i-SYS = ω_i − ω_SYS, f_i-SYS = (P_mi − P_ei) − (M_i/M_SYS)·P_SYS.
std::vector<FrameSeries> to_coi_sys(const Trajectory& traj, const PowerSeries& power);

/// Mass-weighted aggregate of machine-level COI-SYS series (f is summed).
FrameSeries aggregate_coi_sys(std::span<const FrameSeries> machine_series, std::span<const std::size_t> members,
                              std::string subject);

/// Machine-CR relative to Machine-NCR: δ_CR − δ_NCR, ω_CR − ω_NCR, P_CR − (M_CR/M_NCR)·P_NCR.
FrameSeries to_coi_ncr(const Trajectory& traj, const GroupPattern& pattern, const PowerSeries& power);

/// Maximum absolute residuals of the mirror identities over all samples. The
/// `relative` entries divide each residual by the largest magnitude of the terms
/// it balances.
struct MirrorResiduals {
    double cr_ncr_delta_sum = 0.0;    // |M_CR δ_CR-SYS + M_NCR δ_NCR-SYS|
    double cr_ncr_omega_sum = 0.0;    // |M_CR ω_CR-SYS + M_NCR ω_NCR-SYS|
    double f_sum = 0.0;               // |f_CR-SYS + f_NCR-SYS|
    double scaled_delta = 0.0;        // |M_NCR δ_CR-NCR − M_SYS δ_CR-SYS|
    double scaled_omega = 0.0;        // |M_NCR ω_CR-NCR − M_SYS ω_CR-SYS|
    double scaled_f = 0.0;            // |M_NCR f_CR-NCR − M_SYS f_CR-SYS|
    std::array<double, 6> relative{};

    std::array<double, 6> absolute() const {
        return {cr_ncr_delta_sum, cr_ncr_omega_sum, f_sum, scaled_delta, scaled_omega, scaled_f};
    }
    double max_relative() const;
};

/// Throws ValidationError if series are misaligned or M_SYS != M_CR + M_NCR.
MirrorResiduals mirror_check(const FrameSeries& cr_sys, const FrameSeries& ncr_sys, const FrameSeries& cr_ncr,
                             double m_cr, double m_ncr, double m_sys);

}  // namespace equistab
