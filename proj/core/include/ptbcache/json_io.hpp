#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "json.hpp"
#include "ptbcache/coupled.hpp"
#include "ptbcache/design.hpp"
#include "ptbcache/scheme.hpp"
#include "ptbcache/search.hpp"
#include "ptbcache/simulate.hpp"

namespace ptb {

using ojson = nlohmann::ordered_json;

// Design documents. Structural scalars are JSON numbers; count-valued fields
// are decimal strings (they exceed 2^53 in sweeps); rationals are reduced
// "p/q" strings. Field order is fixed.
ojson design_json(const PtbDesign& d);
ojson design_json(const CoupledDesign& d);

// Rebuilds the design from its JSON document (grouping + selections), and
// recomputes every derived quantity, verifying it against the stored values.
using AnyDesign = std::variant<PtbDesign, CoupledDesign>;
AnyDesign design_from_json(const ojson& j);
AnyDesign load_design(const std::string& path);

ojson sim_report_json(const SimReport& r, bool include_wall);
ojson validation_report_json(const ValidationReport& r, long long file_bits);

// One JSON object per line per coded message.
void write_schedule_audit(std::ostream& os, const Placement& p, const DeliverySchedule& s);

std::string search_csv(const SearchResult& r);

std::string sim_csv_header();
std::string sim_csv_row(const SimReport& r, uint64_t seed);

}  // namespace ptb
