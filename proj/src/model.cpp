#include "equistab/model.hpp"

#include "equistab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace equistab {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 3> kStageKeys = {"prefault", "fault", "postfault"};

std::string line_context(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    return "line " + std::to_string(line);
}

const json& require_key(const json& node, const char* key, const std::string& where) {
    if (!node.is_object() || !node.contains(key)) {
        throw ParseError(where + ": missing field '" + key + "'");
    }
    return node.at(key);
}

double read_number(const json& node, const char* key, const std::string& where) {
    const json& value = require_key(node, key, where);
    if (!value.is_number()) {
        throw ParseError(where + "." + key + ": expected a number");
    }
    return value.get<double>();
}

DenseMatrix read_matrix(const json& node, const std::string& where) {
    if (!node.is_array()) {
        throw ParseError(where + ": expected an array of rows");
    }
    const std::size_t n = node.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = node[i];
        const std::string row_where = where + "[" + std::to_string(i) + "]";
        if (!row.is_array()) {
            throw ParseError(row_where + ": expected an array");
        }
        if (row.size() != n) {
            throw ParseError(row_where + ": dimension error, row has " + std::to_string(row.size()) +
                             " entries but matrix has " + std::to_string(n) + " rows");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!row[j].is_number()) {
                throw ParseError(row_where + "[" + std::to_string(j) + "]: expected a number");
            }
            m(i, j) = row[j].get<double>();
        }
    }
    return m;
}

json matrix_to_json(const DenseMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void check_matrix(const DenseMatrix& m, std::size_t n, const std::string& name,
                  std::vector<std::string>& out) {
    if (m.size() != n) {
        out.push_back(name + ": dimension " + std::to_string(m.size()) + " does not match machine count " +
                      std::to_string(n));
        return;
    }
    bool finite = true;
    bool symmetric = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            finite = finite && std::isfinite(m(i, j));
            symmetric = symmetric && m(i, j) == m(j, i);
        }
    }
    if (!finite) {
        out.push_back(name + ": non-finite entry");
    } else if (!symmetric) {
        out.push_back(name + ": not symmetric");
    }
}

}  // namespace

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::Prefault: return "prefault";
        case Stage::Fault: return "fault";
        case Stage::Postfault: return "postfault";
    }
    return "?";
}

std::size_t Scenario::index_of(MachineId id) const {
    for (std::size_t i = 0; i < machines.size(); ++i) {
        if (machines[i].id == id) {
            return i;
        }
    }
    throw std::out_of_range("unknown machine id " + std::to_string(id));
}

std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> out;
    const std::size_t n = s.machines.size();
    if (n == 0) {
        out.emplace_back("machines: at least one machine is required");
    }
    std::set<MachineId> seen;
    for (const MachineParams& m : s.machines) {
        const std::string who = "machine " + std::to_string(m.id);
        if (!seen.insert(m.id).second) {
            out.push_back(who + ": duplicate machine id");
        }
        if (!(m.inertia_M > 0.0) || !std::isfinite(m.inertia_M)) {
            out.push_back(who + ": inertia_M must be positive");
        }
        if (!(m.emf_E > 0.0) || !std::isfinite(m.emf_E)) {
            out.push_back(who + ": emf_E must be positive");
        }
        if (!std::isfinite(m.pm)) {
            out.push_back(who + ": pm must be finite");
        }
    }
    if (s.initial_angles.size() != n || s.initial_speeds.size() != n) {
        out.emplace_back("initial state: delta0/omega0 count does not match machine count");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.initial_angles[i]) || !std::isfinite(s.initial_speeds[i])) {
                out.push_back("machine " + std::to_string(s.machines[i].id) + ": non-finite initial state");
            }
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        const ReducedNetwork& net = s.networks[k];
        check_matrix(net.conductance_G, n, std::string(kStageKeys[k]) + ".G", out);
        check_matrix(net.susceptance_B, n, std::string(kStageKeys[k]) + ".B", out);
    }
    if (!(s.t_clear > 0.0) || !(s.t_clear < s.t_end)) {
        out.emplace_back("t_clear: must satisfy 0 < t_clear < t_end");
    }
    if (!std::isfinite(s.t_end)) {
        out.emplace_back("t_end: must be finite");
    }
    if (!(s.dt > 0.0) || !(s.dt <= s.t_clear)) {
        out.emplace_back("dt: must satisfy 0 < dt <= t_clear");
    }
    return out;
}

void require_valid(const Scenario& scenario) {
    const auto violations = validate(scenario);
    if (violations.empty()) {
        return;
    }
    std::ostringstream msg;
    msg << "invalid scenario:";
    for (const auto& v : violations) {
        msg << "\n  " << v;
    }
    throw ValidationError(msg.str());
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("scenario parse error at " + line_context(text, e.byte) + ": " + e.what());
    }

    Scenario s;
    const json& machines = require_key(doc, "machines", "scenario");
    if (!machines.is_array()) {
        throw ParseError("machines: expected an array");
    }
    for (std::size_t i = 0; i < machines.size(); ++i) {
        const std::string where = "machines[" + std::to_string(i) + "]";
        const json& m = machines[i];
        const json& id = require_key(m, "id", where);
        if (!id.is_number_integer()) {
            throw ParseError(where + ".id: expected an integer");
        }
        s.machines.push_back(MachineParams{id.get<MachineId>(), read_number(m, "M", where),
                                           read_number(m, "E", where), read_number(m, "Pm", where)});
        s.initial_angles.push_back(read_number(m, "delta0", where));
        s.initial_speeds.push_back(m.contains("omega0") ? read_number(m, "omega0", where) : 0.0);
    }

    const json& networks = require_key(doc, "networks", "scenario");
    for (std::size_t k = 0; k < 3; ++k) {
        const std::string where = std::string("networks.") + kStageKeys[k];
        const json& net = require_key(networks, kStageKeys[k], "networks");
        s.networks[k].conductance_G = read_matrix(require_key(net, "G", where), where + ".G");
        s.networks[k].susceptance_B = read_matrix(require_key(net, "B", where), where + ".B");
    }

    const json& fault = require_key(doc, "fault", "scenario");
    s.t_clear = read_number(fault, "t_clear", "fault");
    s.t_end = read_number(fault, "t_end", "fault");
    s.dt = fault.contains("dt") ? read_number(fault, "dt", "fault") : 1e-3;

    require_valid(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) {
    json doc;
    doc["machines"] = json::array();
    for (std::size_t i = 0; i < s.machines.size(); ++i) {
        const MachineParams& m = s.machines[i];
        doc["machines"].push_back({{"id", m.id},
                                   {"M", m.inertia_M},
                                   {"E", m.emf_E},
                                   {"Pm", m.pm},
                                   {"delta0", s.initial_angles.at(i)},
                                   {"omega0", s.initial_speeds.at(i)}});
    }
    for (std::size_t k = 0; k < 3; ++k) {
        doc["networks"][kStageKeys[k]] = {{"G", matrix_to_json(s.networks[k].conductance_G)},
                                          {"B", matrix_to_json(s.networks[k].susceptance_B)}};
    }
    doc["fault"] = {{"t_clear", s.t_clear}, {"t_end", s.t_end}, {"dt", s.dt}};
    return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write scenario file: " + path.string());
    }
    out << dump_scenario(scenario);
}

}  // namespace equistab
