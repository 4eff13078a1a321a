#include "equistab/indmach.hpp"

#include "equistab/errors.hpp"
#include "series_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace equistab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

SwingEvent make_event(const FrameSeries& s, EventKind kind, std::size_t k, double t) {
    SwingEvent e;
    e.kind = kind;
    e.subject = s.subject;
    e.time = t;
    e.interval = k;
    e.angle_at_event = detail::interpolate(s.times, s.delta, k, t);
    e.omega_at_event = detail::interpolate(s.times, s.omega, k, t);
    e.f_at_event = detail::interpolate(s.times, s.f, k, t);
    return e;
}

bool crosses(double a, double b) { return (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0); }

}  // namespace

const char* to_string(EventKind kind) { return kind == EventKind::DSP ? "DSP" : "DLP"; }

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Stable: return "stable";
        case Verdict::Critical: return "critical";
        case Verdict::Unstable: return "unstable";
        case Verdict::UndeterminedHorizon: return "undetermined-horizon";
    }
    return "?";
}

std::vector<SwingEvent> detect_dsp(const FrameSeries& s) { return detect_dsp(s, s.clearing_index); }

std::vector<SwingEvent> detect_dsp(const FrameSeries& s, std::size_t from) {
    std::vector<SwingEvent> events;
    int ordinal = 0;
    for (std::size_t k = from; k + 1 < s.size(); ++k) {
        if (!crosses(s.omega[k], s.omega[k + 1])) {
            continue;
        }
        const double t = detail::crossing_time(s.times[k], s.times[k + 1], s.omega[k], s.omega[k + 1]);
        SwingEvent e = make_event(s, EventKind::DSP, k, t);
        e.omega_at_event = 0.0;
        e.swing_index = ordinal / 2 + 1;
        ++ordinal;
        events.push_back(std::move(e));
    }
    return events;
}

std::vector<SwingEvent> detect_dlp(const FrameSeries& s) { return detect_dlp(s, s.clearing_index); }

std::vector<SwingEvent> detect_dlp(const FrameSeries& s, std::size_t from) {
    std::vector<SwingEvent> events;
    for (std::size_t k = from; k + 1 < s.size(); ++k) {
        if (!crosses(s.f[k], s.f[k + 1])) {
            continue;
        }
        const double t = detail::crossing_time(s.times[k], s.times[k + 1], s.f[k], s.f[k + 1]);
        const int direction = sign_of(s.f[k + 1] - s.f[k]);
        const int motion = sign_of(detail::interpolate(s.times, s.omega, k, t));
        if (motion == 0 || direction != motion) {
            continue;
        }
        SwingEvent e = make_event(s, EventKind::DLP, k, t);
        e.f_at_event = 0.0;
        events.push_back(std::move(e));
    }
    return events;
}

std::vector<SwingEvent> detect_events(const FrameSeries& s) {
    std::vector<SwingEvent> dsp = detect_dsp(s);
    std::vector<SwingEvent> dlp = detect_dlp(s);
    for (SwingEvent& l : dlp) {
        int stationary_before = 0;
        for (SwingEvent& d : dsp) {
            if (d.interval == l.interval) {
                d.coincident = true;
                l.coincident = true;
            }
            if (d.time < l.time) {
                ++stationary_before;
            }
        }
        l.swing_index = stationary_before / 2 + 1;
        // Pole slip: 2π of separation angle, expressed in the subject's own angle.
        const double slip = 2.0 * std::numbers::pi / s.angle_scale;
        for (const SwingEvent& d : dsp) {
            if (d.time > l.time) {
                l.reversed = std::abs(d.angle_at_event - l.angle_at_event) < slip;
                break;
            }
        }
    }
    std::vector<SwingEvent> all;
    all.reserve(dsp.size() + dlp.size());
    all.insert(all.end(), dsp.begin(), dsp.end());
    all.insert(all.end(), dlp.begin(), dlp.end());
    std::stable_sort(all.begin(), all.end(), [](const SwingEvent& a, const SwingEvent& b) { return a.time < b.time; });
    return all;
}

double margin_eta(double a_acc, double a_dec, double a_dec_reserve) {
    if (!(a_acc > 0.0)) {
        return kInf;
    }
    return (a_dec + a_dec_reserve - a_acc) / a_acc;
}

Verdict margin_verdict(double eta, std::optional<EventKind> terminated_by, const MarginOptions& options) {
    if (!terminated_by) {
        return Verdict::UndeterminedHorizon;
    }
    if (std::abs(eta) < options.critical_band) {
        return Verdict::Critical;
    }
    return *terminated_by == EventKind::DLP ? Verdict::Unstable : Verdict::Stable;
}

MarginReport machine_margin(const FrameSeries& s, const MarginOptions& options) {
    const auto events = detect_events(s);
    return machine_margin(s, events, options);
}

MarginReport machine_margin(const FrameSeries& s, std::span<const SwingEvent> events, const MarginOptions& options) {
    MarginReport r;
    r.subject = s.subject;
    r.inertia = s.inertia;
    const std::size_t c = s.clearing_index;
    if (c >= s.size()) {
        throw ValidationError("machine_margin: series does not reach the clearing sample");
    }
    const double omega_c = s.omega[c];
    r.orientation = omega_c < 0.0 ? -1 : 1;
    r.a_acc = 0.5 * s.inertia * omega_c * omega_c;

    const double t_clear = s.times[c];
    const auto it = std::find_if(events.begin(), events.end(), [&](const SwingEvent& e) {
        return e.time >= t_clear && !(e.kind == EventKind::DLP && e.reversed);
    });
    if (it != events.end()) {
        r.terminating_event = *it;
    }

    if (!(r.a_acc > 0.0)) {
        r.untouched = true;
        r.eta = kInf;
        r.verdict = Verdict::Stable;
        return r;
    }
    if (!r.terminating_event) {
        r.eta = std::numeric_limits<double>::quiet_NaN();
        r.verdict = Verdict::UndeterminedHorizon;
        const auto area = detail::cumulative_decel_area(s.times, s.f, s.omega, c);
        r.a_dec = area.back();
        r.residual_ke = r.a_acc - r.a_dec;
        return r;
    }

    const SwingEvent& ev = *r.terminating_event;
    const auto area = detail::cumulative_decel_area(s.times, s.f, s.omega, c);
    r.a_dec = area[ev.interval - c] + detail::partial_decel_area(s.times, s.f, s.omega, c, ev.interval, ev.time);
    r.residual_ke = r.a_acc - r.a_dec;
    r.ke_at_event = 0.5 * s.inertia * ev.omega_at_event * ev.omega_at_event;

    if (ev.kind == EventKind::DSP) {
        // Kimbark curve in the direction of motion, clearing up to the return point,
        // fitted against the separation angle so every mirror frame sees the same curve.
        const double o = r.orientation;
        const double scale = s.angle_scale;
        std::vector<double> d;
        std::vector<double> f;
        for (std::size_t k = c; k <= ev.interval; ++k) {
            d.push_back(o * scale * s.delta[k]);
            f.push_back(o * s.f[k]);
        }
        r.a_dec_reserve = detail::extrapolated_reserve(d, f, o * scale * s.delta[c], o * scale * ev.angle_at_event,
                                                       o * ev.f_at_event, options.reserve_window) /
                          scale;
    }
    r.eta = margin_eta(r.a_acc, r.a_dec, r.a_dec_reserve);
    r.verdict = margin_verdict(r.eta, ev.kind, options);
    return r;
}

std::vector<std::size_t> select_monitored(std::span<const MarginReport> reports, double fraction) {
    double largest = 0.0;
    for (const MarginReport& r : reports) {
        largest = std::max(largest, r.a_acc);
    }
    std::vector<std::size_t> out;
    if (!(largest > 0.0)) {
        return out;
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (reports[i].a_acc > 0.0 && reports[i].a_acc >= fraction * largest) {
            out.push_back(i);
        }
    }
    return out;
}

SystemVerdict unity_verdict(std::span<const MarginReport> reports) {
    if (reports.empty()) {
        throw ValidationError("unity_verdict: no machine reports");
    }
    SystemVerdict v;
    bool any_unstable = false;
    bool any_critical = false;
    bool any_undetermined = false;
    double lo = kInf;
    double hi = -kInf;
    double min_stable = kInf;
    for (const MarginReport& r : reports) {
        switch (r.verdict) {
            case Verdict::Unstable:
                any_unstable = true;
                lo = std::min(lo, r.eta);
                hi = std::max(hi, r.eta);
                v.unstable_subjects.push_back(r.subject);
                break;
            case Verdict::Critical:
                any_critical = true;
                min_stable = std::min(min_stable, r.eta);
                break;
            case Verdict::Stable:
                min_stable = std::min(min_stable, r.eta);
                break;
            case Verdict::UndeterminedHorizon:
                any_undetermined = true;
                break;
        }
    }
    if (any_unstable) {
        v.verdict = Verdict::Unstable;
        v.severity_lo = lo;
        v.severity_hi = hi;
        return v;
    }
    v.verdict = any_undetermined ? Verdict::UndeterminedHorizon
                : any_critical   ? Verdict::Critical
                                 : Verdict::Stable;
    v.severity_lo = min_stable;
    v.severity_hi = min_stable;
    return v;
}

}  // namespace equistab
