#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nqg/bounds.hpp"
#include "nqg/census4.hpp"
#include "nqg/enumerate.hpp"
#include "nqg/partial.hpp"
#include "nqg/trades.hpp"

namespace nqg {

using nlohmann::json;

// Hypercube: {"k":..,"n":..,"values":[..]} — flat, row-major, last index
// fastest. PartialQuasigroup adds "domain": {"box":[a,b]} or
// {"points":[[..],..]}. Components: {"pair":[a,b],"points":[[..],..]}.
json to_json(const Hypercube& h);
Hypercube hypercube_from_json(const json& j);

json to_json(const PartialQuasigroup& g);
PartialQuasigroup partial_from_json(const json& j);

json to_json(const Component& c);
Component component_from_json(const json& j);
json to_json(const std::vector<Component>& cs);
std::vector<Component> components_from_json(const json& j);

json to_json(const GammaReport& rep);
json to_json(const CensusRecord& rec);
json to_json(const BoundsReport& rep);
json to_json(const AlphaReport& rep);

// Recurrence rows: all ledger columns as decimal strings.
json recurrence_to_json(const std::vector<RecurrenceRow>& rows);
std::string recurrence_to_csv(const std::vector<RecurrenceRow>& rows, bool intermediates);

json family_report(const Hypercube& f, const std::vector<Component>& family,
                   FamilyStrategy strategy);

// File helpers.
json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);
Hypercube load_hypercube(const std::string& path);

}  // namespace nqg
