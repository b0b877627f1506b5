#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bobw/allocation.hpp"
#include "bobw/charity.hpp"
#include "bobw/eating.hpp"
#include "bobw/instance.hpp"
#include "bobw/rounding.hpp"

namespace bobw {

using nlohmann::json;

Rational rational_from_json(const json& j);  // integer or "p/q" string

Instance instance_from_json(const json& j);
json to_json(const Instance& inst);

IntegralAllocation allocation_from_json(const json& j);
json to_json(const IntegralAllocation& a);

RandomizedAllocation randomized_from_json(const json& j);
json to_json(const RandomizedAllocation& d);

Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& x);

json to_json(const EatingTrace& t);
json to_json(const TraceSummary& s);

// Same layout as a randomized allocation; every bundle is a singleton.
Decomposition decomposition_from_json(const json& j, int rows, int cols);
json to_json(const Decomposition& d);

json to_json(const SwapTrace& t);
SwapTrace swap_trace_from_json(const json& j);

// A bundled fixture name (FIX-A .. FIX-E, case-insensitive) or a JSON file path.
// epsilon overrides the default 1/1000 of parameterized fixtures.
Instance load_instance(const std::string& name_or_path, const std::optional<Rational>& epsilon = std::nullopt);

json read_json_file(const std::string& path);

}  // namespace bobw
