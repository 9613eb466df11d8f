#pragma once

#include <json.hpp>

#include "cones/geometry.hpp"
#include "cones/harness.hpp"
#include "cones/instances.hpp"
#include "cones/objectives.hpp"

namespace cones {

nlohmann::json to_json(const Point& x);
nlohmann::json to_json(const Halfspace& h);
/// Base, cuts, and (for d = 2 over a box) the polygon vertices.
nlohmann::json to_json(const ConvexSet& S);
nlohmann::json to_json(const Objective& f);
/// Oblivious instances list their sets; adaptive ones list parameters only.
nlohmann::json to_json(const Instance& inst);
/// Same field names as the trace CSV, plus jump times and meta.
nlohmann::json to_json(const Trace& trace);
nlohmann::json to_json(const std::vector<SweepRow>& table);

ConvexSet convex_set_from_json(const nlohmann::json& j);
Objective objective_from_json(const nlohmann::json& j);

}  // namespace cones
