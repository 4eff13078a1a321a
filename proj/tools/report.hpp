#pragma once

#include "equistab/assess.hpp"
#include "equistab/eqmach.hpp"

#include <filesystem>
#include <json.hpp>
#include <string>

namespace equistab::cli {

/// Fixed-format number text so report bytes depend only on the values.
std::string fmt(double v);

/// Finite values stay numbers; ±inf and NaN become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);

nlohmann::json to_json(const SwingEvent& e);
nlohmann::json to_json(const MarginReport& r);
nlohmann::json to_json(const MirrorResiduals& m);
nlohmann::json to_json(const PatternResult& r);

nlohmann::json margin_report(const Assessment& a);
nlohmann::json mirror_report(const Assessment& a);
nlohmann::json innergroup_report(const Assessment& a);
nlohmann::json patterns_report(const Assessment& a);
nlohmann::json cct_report(const CctResult& r, double tol);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

void write_trajectory_syn(const std::filesystem::path& path, const Assessment& a);
void write_trajectory_coi_sys(const std::filesystem::path& path, const Assessment& a);
void write_equivalent(const std::filesystem::path& path, const EquivalentSeries& eq);
void write_kimbark(const std::filesystem::path& path, const Assessment& a);
void write_events(const std::filesystem::path& path, const Assessment& a);

/// "2,3|1" becomes "2-3_vs_1", safe in file names.
std::string file_label(const GroupPattern& p);

}  // namespace equistab::cli
