#pragma once

// Equivalent-machine engine.
//
// Each group of a separation pattern is replaced by a machine carrying the
// group's total inertia, its inertia-weighted angle and speed, and its summed
// accelerating power. The relative motion of Machine-CR against Machine-NCR is a
// two-machine system with its own equation of motion
//
//     dδ_CR-NCR/dt = ω_CR-NCR,   M_CR dω_CR-NCR/dt = P_CR − (M_CR/M_NCR)·P_NCR,
//
// so equal-area and energy accounting apply to it exactly as to a real machine.
// The CR-SYS series (Machine-CR against the system COI) is a constant-ratio
// mirror of the CR-NCR series and yields the same margin.

#include "equistab/frames.hpp"
#include "equistab/indmach.hpp"
#include "equistab/model.hpp"
#include "equistab/pattern.hpp"
#include "equistab/sim.hpp"

#include <span>
#include <vector>

namespace equistab {

/// Inertia-weighted aggregate of one group at one instant.
struct GroupAggregate {
    double inertia = 0.0;
    double delta = 0.0;
    double omega = 0.0;
    double power = 0.0;  // Σ (P_mi − P_ei)
};

/// Aggregates explicit member values; `accel` may be empty when only angles and speeds matter.
GroupAggregate aggregate_values(std::span<const double> inertia, std::span<const double> delta,
                                std::span<const double> omega, std::span<const double> accel = {});

struct EquivalentSeries {
    GroupPattern pattern;
    double m_cr = 0.0;
    double m_ncr = 0.0;
    double m_sys = 0.0;
    std::size_t clearing_index = 0;
    std::vector<double> times;
    // Synchronous-reference equivalent machines.
    std::vector<double> delta_cr, omega_cr, p_cr;
    std::vector<double> delta_ncr, omega_ncr, p_ncr;
    // Relative systems.
    FrameSeries cr_ncr;   // built from the synchronous aggregates
    FrameSeries cr_sys;   // built from machine-level COI-SYS series
    FrameSeries ncr_sys;
};

/// Throws ValidationError for a pattern that is not a bipartition of the trajectory's machines.
EquivalentSeries aggregate(const Trajectory& traj, const PowerSeries& power, const GroupPattern& pattern);

/// Overload reusing already-computed machine-level COI-SYS series.
EquivalentSeries aggregate(const Trajectory& traj, const PowerSeries& power, const GroupPattern& pattern,
                           std::span<const FrameSeries> machine_sys);

/// Equivalent-machine transient energy over the post-fault window, anchored at clearing.
struct EnergySeries {
    std::vector<double> times;
    std::vector<double> v_ke;     // ½ M_CR ω²_CR-NCR
    std::vector<double> v_pe;     // ∫ −f dδ_CR-NCR from the clearing angle
    std::vector<double> v_total;

    /// max |v_total(t) − v_total(t_clear)|
    double drift() const;
};

EnergySeries energy(const EquivalentSeries& eq);

enum class EquivalentFrame { CrNcr, CrSys };

MarginReport equivalent_margin(const EquivalentSeries& eq, EquivalentFrame frame = EquivalentFrame::CrNcr,
                               const MarginOptions& options = {});

enum class PatternMode { AngleCuts, Exhaustive };

/// Candidate separation patterns. Angle cuts rank the machines by angle at the
/// sample of widest angular spread and return the n−1 leading-group prefixes;
/// exhaustive mode returns every bipartition (n ≤ 20), Ω_CR being the side with
/// the larger inertia-weighted angle at that sample.
std::vector<GroupPattern> enumerate_patterns(const Trajectory& traj, PatternMode mode = PatternMode::AngleCuts);

struct PatternResult {
    GroupPattern pattern;
    MarginReport margin;
    std::vector<SwingEvent> events;  // EDSP/EDLP of the CR-NCR series
    double max_excursion = 0.0;      // max |δ_CR-NCR| over the post-fault window
};

PatternResult evaluate_pattern(const Trajectory& traj, const PowerSeries& power, const GroupPattern& pattern,
                               std::span<const FrameSeries> machine_sys, const MarginOptions& options = {});

/// Evaluates patterns on up to `threads` workers; output order follows `patterns`.
std::vector<PatternResult> evaluate_patterns(const Trajectory& traj, const PowerSeries& power,
                                             std::span<const GroupPattern> patterns,
                                             std::span<const FrameSeries> machine_sys, unsigned threads = 1,
                                             const MarginOptions& options = {});

/// Pattern of minimum η. Ties go to the smaller Ω_CR, then to lexicographically
/// smaller ids. Patterns still undetermined at the horizon rank behind every
/// determinate one (larger excursion first); untouched patterns (A_acc = 0) only
/// win when nothing else exists. Throws ValidationError on empty input.
const PatternResult& dominant_pattern(std::span<const PatternResult> results);

struct CctProbe {
    double t_clear = 0.0;
    Verdict verdict = Verdict::Stable;
    double eta = 0.0;
    bool unstable = false;  // accounting closed by an EDLP
    GroupPattern dominant;
};

struct CctResult {
    double cct = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::vector<CctProbe> history;
};

struct CctOptions {
    PatternMode mode = PatternMode::AngleCuts;
    unsigned threads = 1;
    MarginOptions margin;
};

/// Equivalent-system verdict for one clearing time: simulate, enumerate, take the dominant pattern.
CctProbe probe_clearing_time(const Scenario& scenario, double t_clear, const CctOptions& options = {});

/// Bisection on the clearing time. A probe counts as unstable when the dominant
/// pattern's accounting is closed by an EDLP; everything else is the stable side.
/// Throws BracketError when t_lo is not on the stable side, t_hi is not unstable,
/// or t_lo >= t_hi.
CctResult find_cct(const Scenario& scenario, double t_lo, double t_hi, double tol, const CctOptions& options = {});

}  // namespace equistab
