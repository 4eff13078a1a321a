#include "report.hpp"

#include "equistab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace equistab::cli {
namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    return out;
}

nlohmann::json ids_json(const std::vector<MachineId>& ids) {
    nlohmann::json j = nlohmann::json::array();
    for (MachineId id : ids) {
        j.push_back(id);
    }
    return j;
}

void angle_columns(std::ostream& os, const std::string& name) {
    os << ',' << name << "_rad," << name << "_deg";
}

void angle_values(std::ostream& os, double rad) { os << ',' << fmt(rad) << ',' << fmt(rad * kDeg); }

}  // namespace

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return fmt(v);
}

std::string file_label(const GroupPattern& p) {
    auto join = [](const std::vector<MachineId>& ids) {
        std::string s;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            s += (i ? "-" : "") + std::to_string(ids[i]);
        }
        return s;
    };
    return join(p.omega_cr) + "_vs_" + join(p.omega_ncr);
}

nlohmann::json to_json(const SwingEvent& e) {
    return {{"subject", e.subject},
            {"kind", to_string(e.kind)},
            {"time_s", json_number(e.time)},
            {"angle_rad", json_number(e.angle_at_event)},
            {"omega_rad_s", json_number(e.omega_at_event)},
            {"f_pu", json_number(e.f_at_event)},
            {"swing_index", e.swing_index},
            {"coincident", e.coincident},
            {"reversed", e.reversed}};
}

nlohmann::json to_json(const MarginReport& r) {
    nlohmann::json j = {{"subject", r.subject},
                        {"inertia", json_number(r.inertia)},
                        {"a_acc", json_number(r.a_acc)},
                        {"a_dec", json_number(r.a_dec)},
                        {"a_dec_reserve", json_number(r.a_dec_reserve)},
                        {"residual_ke", json_number(r.residual_ke)},
                        {"ke_at_event", json_number(r.ke_at_event)},
                        {"eta", json_number(r.eta)},
                        {"orientation", r.orientation},
                        {"untouched", r.untouched},
                        {"verdict", to_string(r.verdict)}};
    j["terminating_event"] = r.terminating_event ? to_json(*r.terminating_event) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const MirrorResiduals& m) {
    static const char* names[6] = {"cr_ncr_delta_sum", "cr_ncr_omega_sum", "f_sum",
                                   "scaled_delta",     "scaled_omega",     "scaled_f"};
    const auto abs = m.absolute();
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < 6; ++i) {
        j[names[i]] = {{"absolute", json_number(abs[i])}, {"relative", json_number(m.relative[i])}};
    }
    j["max_relative"] = json_number(m.max_relative());
    return j;
}

nlohmann::json to_json(const PatternResult& r) {
    nlohmann::json events = nlohmann::json::array();
    for (const SwingEvent& e : r.events) {
        events.push_back(to_json(e));
    }
    return {{"pattern", r.pattern.label()},
            {"omega_cr", ids_json(r.pattern.omega_cr)},
            {"omega_ncr", ids_json(r.pattern.omega_ncr)},
            {"max_excursion_rad", json_number(r.max_excursion)},
            {"margin", to_json(r.margin)},
            {"events", events}};
}

nlohmann::json margin_report(const Assessment& a) {
    nlohmann::json machines = nlohmann::json::array();
    for (const MarginReport& r : a.machine_reports) {
        machines.push_back(to_json(r));
    }
    nlohmann::json monitored = nlohmann::json::array();
    for (std::size_t i : a.monitored) {
        monitored.push_back(a.traj.machine_ids[i]);
    }
    const PatternResult& dom = a.dominant_result();
    const bool original_unstable = a.unity.verdict == Verdict::Unstable;
    const bool equivalent_unstable = dom.margin.verdict == Verdict::Unstable;
    nlohmann::json j;
    j["individual"] = {{"machines", machines},
                       {"monitored", monitored},
                       {"verdict", to_string(a.unity.verdict)},
                       {"severity_interval", {json_number(a.unity.severity_lo), json_number(a.unity.severity_hi)}},
                       {"unstable_machines", a.unity.unstable_subjects}};
    j["equivalent"] = {{"dominant_pattern", dom.pattern.label()},
                       {"eta_sys", json_number(dom.margin.eta)},
                       {"verdict", to_string(dom.margin.verdict)},
                       {"cr_ncr", to_json(dom.margin)},
                       {"cr_sys", to_json(a.dominant_cr_sys)},
                       {"patterns_evaluated", a.patterns.size()}};
    j["verdicts_agree"] = original_unstable == equivalent_unstable;
    j["severity_trusted"] = a.fierceness.severity_trusted;
    return j;
}

nlohmann::json mirror_report(const Assessment& a) {
    const EquivalentSeries& eq = a.dominant_series;
    const double eta_ncr = a.dominant_result().margin.eta;
    const double eta_sys = a.dominant_cr_sys.eta;
    double rel = std::abs(eta_ncr - eta_sys) / std::max(std::abs(eta_ncr), 1e-300);
    if (std::isinf(eta_ncr) && eta_ncr == eta_sys) rel = 0.0;
    return {{"pattern", eq.pattern.label()},
            {"m_cr", json_number(eq.m_cr)},
            {"m_ncr", json_number(eq.m_ncr)},
            {"m_sys", json_number(eq.m_sys)},
            {"residuals", to_json(a.mirror)},
            {"eta_cr_ncr", json_number(eta_ncr)},
            {"eta_cr_sys", json_number(eta_sys)},
            {"eta_relative_difference", json_number(rel)}};
}

nlohmann::json innergroup_report(const Assessment& a) {
    const InnerMotionSeries& s = a.inner;
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        members.push_back({{"machine", s.ids[i]},
                           {"group", s.in_cr[i] ? "CR" : "NCR"},
                           {"max_abs_excursion_rad", json_number(s.max_abs_excursion[i])}});
    }
    const FiercenessReport& f = a.fierceness;
    return {{"pattern", s.pattern.label()},
            {"threshold_rad", json_number(f.threshold)},
            {"cr", to_string(f.cr)},
            {"ncr", to_string(f.ncr)},
            {"severity_trusted", f.severity_trusted},
            {"worst_machine", f.worst_machine},
            {"worst_excursion_rad", json_number(f.worst_excursion)},
            {"members", members}};
}

nlohmann::json patterns_report(const Assessment& a) {
    nlohmann::json list = nlohmann::json::array();
    for (const PatternResult& r : a.patterns) {
        list.push_back(to_json(r));
    }
    return {{"dominant_pattern", a.dominant_result().pattern.label()}, {"patterns", list}};
}

nlohmann::json cct_report(const CctResult& r, double tol) {
    nlohmann::json history = nlohmann::json::array();
    for (const CctProbe& p : r.history) {
        history.push_back({{"t_clear_s", json_number(p.t_clear)},
                           {"verdict", to_string(p.verdict)},
                           {"eta", json_number(p.eta)},
                           {"unstable", p.unstable},
                           {"dominant_pattern", p.dominant.label()}});
    }
    return {{"cct_s", json_number(r.cct)},
            {"t_lo_s", json_number(r.t_lo)},
            {"t_hi_s", json_number(r.t_hi)},
            {"bracket_width_s", json_number(r.t_hi - r.t_lo)},
            {"tol_s", json_number(tol)},
            {"probes", history}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
}

void write_trajectory_syn(const std::filesystem::path& path, const Assessment& a) {
    auto os = open_for_write(path);
    const Trajectory& t = a.traj;
    os << "time_s,stage";
    for (MachineId id : t.machine_ids) {
        const std::string m = "m" + std::to_string(id);
        angle_columns(os, m + "_delta");
        os << ',' << m << "_omega_rad_s," << m << "_pe_pu";
    }
    os << '\n';
    for (std::size_t k = 0; k < t.sample_count(); ++k) {
        os << fmt(t.times[k]) << ',' << to_string(t.stage_at(k));
        for (std::size_t i = 0; i < t.machine_count(); ++i) {
            angle_values(os, t.delta[k][i]);
            os << ',' << fmt(t.omega[k][i]) << ',' << fmt(a.power.pe[k][i]);
        }
        os << '\n';
    }
}

void write_trajectory_coi_sys(const std::filesystem::path& path, const Assessment& a) {
    auto os = open_for_write(path);
    os << "time_s";
    for (const FrameSeries& s : a.machine_sys) {
        const std::string m = "m" + s.subject;
        angle_columns(os, m + "_delta");
        os << ',' << m << "_omega_rad_s," << m << "_f_pu";
    }
    os << '\n';
    for (std::size_t k = 0; k < a.traj.sample_count(); ++k) {
        os << fmt(a.traj.times[k]);
        for (const FrameSeries& s : a.machine_sys) {
            angle_values(os, s.delta[k]);
            os << ',' << fmt(s.omega[k]) << ',' << fmt(s.f[k]);
        }
        os << '\n';
    }
}

void write_equivalent(const std::filesystem::path& path, const EquivalentSeries& eq) {
    auto os = open_for_write(path);
    const EnergySeries e = energy(eq);
    os << "time_s";
    angle_columns(os, "delta_cr");
    angle_columns(os, "delta_ncr");
    angle_columns(os, "delta_cr_ncr");
    os << ",omega_cr_ncr_rad_s,f_cr_ncr_pu";
    angle_columns(os, "delta_cr_sys");
    os << ",omega_cr_sys_rad_s,f_cr_sys_pu,v_ke_pu_s,v_pe_pu_s,v_total_pu_s\n";
    for (std::size_t k = 0; k < eq.times.size(); ++k) {
        os << fmt(eq.times[k]);
        angle_values(os, eq.delta_cr[k]);
        angle_values(os, eq.delta_ncr[k]);
        angle_values(os, eq.cr_ncr.delta[k]);
        os << ',' << fmt(eq.cr_ncr.omega[k]) << ',' << fmt(eq.cr_ncr.f[k]);
        angle_values(os, eq.cr_sys.delta[k]);
        os << ',' << fmt(eq.cr_sys.omega[k]) << ',' << fmt(eq.cr_sys.f[k]);
        if (k >= eq.clearing_index) {
            const std::size_t j = k - eq.clearing_index;
            os << ',' << fmt(e.v_ke[j]) << ',' << fmt(e.v_pe[j]) << ',' << fmt(e.v_total[j]);
        } else {
            os << ",,,";
        }
        os << '\n';
    }
}

void write_kimbark(const std::filesystem::path& path, const Assessment& a) {
    auto os = open_for_write(path);
    os << "subject,frame,time_s,delta_rad,delta_deg,f_pu\n";
    auto dump = [&](const FrameSeries& s) {
        for (std::size_t k = s.clearing_index; k < s.size(); ++k) {
            os << s.subject << ',' << to_string(s.frame) << ',' << fmt(s.times[k]);
            angle_values(os, s.delta[k]);
            os << ',' << fmt(s.f[k]) << '\n';
        }
    };
    for (const FrameSeries& s : a.machine_sys) {
        dump(s);
    }
    dump(a.dominant_series.cr_ncr);
}

void write_events(const std::filesystem::path& path, const Assessment& a) {
    auto os = open_for_write(path);
    os << "subject,kind,time_s,angle_rad,angle_deg,omega_rad_s,f_pu,swing_index,coincident,reversed\n";
    auto dump = [&](const std::vector<SwingEvent>& events) {
        for (const SwingEvent& e : events) {
            os << e.subject << ',' << to_string(e.kind) << ',' << fmt(e.time);
            angle_values(os, e.angle_at_event);
            os << ',' << fmt(e.omega_at_event) << ',' << fmt(e.f_at_event) << ',' << e.swing_index << ','
               << (e.coincident ? 1 : 0) << ',' << (e.reversed ? 1 : 0) << '\n';
        }
    };
    for (const auto& events : a.machine_events) {
        dump(events);
    }
    dump(a.dominant_result().events);
}

}  // namespace equistab::cli
