#include "equistab/pattern.hpp"

#include "equistab/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace equistab {
namespace {

std::string join(const std::vector<MachineId>& ids, char sep) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(ids[i]);
    }
    return out;
}

}  // namespace

GroupPattern GroupPattern::from_critical(const std::vector<MachineId>& critical,
                                         const std::vector<MachineId>& all_ids) {
    GroupPattern p;
    p.omega_cr = critical;
    std::sort(p.omega_cr.begin(), p.omega_cr.end());
    for (MachineId id : all_ids) {
        if (!std::binary_search(p.omega_cr.begin(), p.omega_cr.end(), id)) {
            p.omega_ncr.push_back(id);
        }
    }
    std::sort(p.omega_ncr.begin(), p.omega_ncr.end());
    require_valid_pattern(p, all_ids);
    return p;
}

std::string GroupPattern::label() const { return join(omega_cr, ',') + "|" + join(omega_ncr, ','); }

void require_valid_pattern(const GroupPattern& p, const std::vector<MachineId>& all_ids) {
    if (p.omega_cr.empty() || p.omega_ncr.empty()) {
        throw ValidationError("group pattern " + p.label() + ": both groups must be nonempty");
    }
    std::set<MachineId> seen;
    for (const auto* side : {&p.omega_cr, &p.omega_ncr}) {
        for (MachineId id : *side) {
            if (std::find(all_ids.begin(), all_ids.end(), id) == all_ids.end()) {
                throw ValidationError("group pattern " + p.label() + ": unknown machine id " + std::to_string(id));
            }
            if (!seen.insert(id).second) {
                throw ValidationError("group pattern " + p.label() + ": machine " + std::to_string(id) +
                                      " appears twice");
            }
        }
    }
    if (seen.size() != all_ids.size()) {
        throw ValidationError("group pattern " + p.label() + ": does not cover every machine");
    }
}

std::vector<MachineId> parse_id_list(const std::string& text) {
    std::vector<MachineId> ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw ParseError("empty entry in machine id list '" + text + "'");
        }
        item = item.substr(first, last - first + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) {
            throw ParseError("invalid machine id '" + item + "' in list '" + text + "'");
        }
        ids.push_back(value);
    }
    if (ids.empty()) {
        throw ParseError("empty machine id list");
    }
    return ids;
}

}  // namespace equistab
