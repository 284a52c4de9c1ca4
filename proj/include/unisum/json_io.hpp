#pragma once

#include <json.hpp>

#include "unisum/bounds.hpp"
#include "unisum/coupling.hpp"
#include "unisum/distribution.hpp"
#include "unisum/membership.hpp"
#include "unisum/oracle.hpp"

namespace unisum {

using Json = nlohmann::ordered_json;

// Rationals travel as strings "p/q" (or "p"); integers are accepted on
// input, floating-point numbers are rejected to keep the pipeline exact.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json dist_to_json(const MixtureDistribution& f);
MixtureDistribution dist_from_json(const Json& j);

Json decision_to_json(const Decision& d);
Decision decision_from_json(const Json& j);

Json hint_to_json(const ShapeHint& h);
ShapeHint hint_from_json(const Json& j);

Json coupling_to_json(const Coupling& c);
Coupling coupling_from_json(const Json& j);

Json grid_target_to_json(const GridTarget& t, const GridSpec& spec);
GridTarget grid_target_from_json(const Json& j, const GridSpec& spec);

Json grid_joint_to_json(const GridJoint& joint);
Json feasibility_to_json(const FeasibilityResult& r, bool include_witness);

Json verify_report_to_json(const VerifyReport& r);
Json bound_result_to_json(const BoundResult& r);

Json parse_json_text(const std::string& text);  // wraps parse errors in ParseError

}  // namespace unisum
