#pragma once

#include "equistab/model.hpp"

#include <string>
#include <vector>

namespace equistab {

/// Bipartition of the machines into the critical group Ω_CR and the rest Ω_NCR.
/// Both id lists are kept sorted ascending.
struct GroupPattern {
    std::vector<MachineId> omega_cr;
    std::vector<MachineId> omega_ncr;

    /// Builds a pattern from the critical ids; every other id of `all_ids` goes to Ω_NCR.
    /// Throws ValidationError on unknown/duplicate ids or an empty side.
    static GroupPattern from_critical(const std::vector<MachineId>& critical,
                                      const std::vector<MachineId>& all_ids);

    /// "2,3|1" style label, also used in report file names (with '|' replaced).
    std::string label() const;

    bool operator==(const GroupPattern&) const = default;
};

/// Throws ValidationError unless the pattern is a nonempty, disjoint cover of `all_ids`.
void require_valid_pattern(const GroupPattern& pattern, const std::vector<MachineId>& all_ids);

/// Parses "2,3" into machine ids. Throws ParseError on malformed input.
std::vector<MachineId> parse_id_list(const std::string& text);

}  // namespace equistab
