#pragma once

// Swing events, equal-area margins and the unity-principle system verdict.
//
// The same routines serve individual machines (COI-SYS series) and equivalent
// machines (CR-NCR or CR-SYS series); a subject is anything with a FrameSeries.

#include "equistab/frames.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace equistab {

enum class EventKind { DSP, DLP };

const char* to_string(EventKind kind);

/// Dynamic stationary point (ω crosses zero) or dynamic liberation point
/// (f crosses zero turning from deceleration to re-acceleration).
struct SwingEvent {
    EventKind kind = EventKind::DSP;
    std::string subject;
    double time = 0.0;
    double angle_at_event = 0.0;
    double omega_at_event = 0.0;
    double f_at_event = 0.0;
    int swing_index = 1;
    std::size_t interval = 0;  // event lies in [times[interval], times[interval + 1]]
    bool coincident = false;   // a DSP and a DLP fall inside the same sample interval
    /// DLP only: the subject later returns (a DSP) without having slipped a pole,
    /// so the re-acceleration was local and does not mark separation.
    bool reversed = false;
};

/// Every zero crossing of ω at or after sample `from` (default: the clearing
/// sample), linearly interpolated. Crossings are numbered in pairs: the forward
/// and backward stationary points of one swing share a swing_index.
std::vector<SwingEvent> detect_dsp(const FrameSeries& series);
std::vector<SwingEvent> detect_dsp(const FrameSeries& series, std::size_t from);

/// Zero crossings of f at or after `from` where the subject stops decelerating and
/// re-accelerates in its direction of motion (for ω > 0: f goes from − to +).
std::vector<SwingEvent> detect_dlp(const FrameSeries& series);
std::vector<SwingEvent> detect_dlp(const FrameSeries& series, std::size_t from);

/// DSP and DLP events merged in time order, with coincidences and reversed DLPs flagged.
std::vector<SwingEvent> detect_events(const FrameSeries& series);

enum class Verdict { Stable, Critical, Unstable, UndeterminedHorizon };

const char* to_string(Verdict verdict);

struct MarginOptions {
    double critical_band = 1e-3;    // |η| below this reports Critical
    double reserve_window = 1.0;    // fraction of the forward swing used for the Kimbark fit
};

struct MarginReport {
    std::string subject;
    double inertia = 0.0;
    double a_acc = 0.0;          // ½ M ω² at clearing
    double a_dec = 0.0;          // ∫ −f dδ from clearing to the terminating event
    double a_dec_reserve = 0.0;  // extrapolated deceleration area beyond a DSP (0 for a DLP)
    double residual_ke = 0.0;    // a_acc − a_dec
    double ke_at_event = 0.0;    // ½ M ω² at the terminating event
    double eta = 0.0;            // (a_dec + a_dec_reserve − a_acc) / a_acc
    int orientation = 1;         // +1 when the subject advances at clearing, −1 when it recedes
    bool untouched = false;      // a_acc == 0, η reported as +∞
    Verdict verdict = Verdict::UndeterminedHorizon;
    std::optional<SwingEvent> terminating_event;
};

/// η from areas, and the verdict it implies for the given terminating event kind.
double margin_eta(double a_acc, double a_dec, double a_dec_reserve = 0.0);
Verdict margin_verdict(double eta, std::optional<EventKind> terminated_by, const MarginOptions& options = {});

/// Equal-area accounting along the post-fault path up to the first event in
/// `events` at or after clearing, skipping reversed DLPs. Later swings are not
/// folded into η.
MarginReport machine_margin(const FrameSeries& series, std::span<const SwingEvent> events,
                            const MarginOptions& options = {});
MarginReport machine_margin(const FrameSeries& series, const MarginOptions& options = {});

/// Machines whose kinetic energy gained at clearing is at least `fraction` of the largest.
std::vector<std::size_t> select_monitored(std::span<const MarginReport> reports, double fraction = 0.05);

struct SystemVerdict {
    Verdict verdict = Verdict::Stable;
    double severity_lo = 0.0;  // over unstable machines when unstable, else min stable η
    double severity_hi = 0.0;
    std::vector<std::string> unstable_subjects;
};

/// Unity principle: the system is unstable iff any monitored machine is.
/// Throws ValidationError on empty input.
SystemVerdict unity_verdict(std::span<const MarginReport> reports);

}  // namespace equistab
