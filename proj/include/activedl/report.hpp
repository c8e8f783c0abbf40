#pragma once

// JSON documents for run reports, model families and comparisons.

#include <json.hpp>

#include "activedl/semantics.hpp"
#include "activedl/update.hpp"

namespace activedl {

using Json = nlohmann::ordered_json;

/// {"true": [...], "unknown": [...]}, rendered atoms in atom order.
Json to_json(const Database& d);
Json to_json(const UpdateOutcome& u);
Json to_json(const FamilyStats& s);
Json to_json(const ModelFamily& f);
Json to_json(const RunReport& r);
Json to_json(const Comparison& c);

}  // namespace activedl
