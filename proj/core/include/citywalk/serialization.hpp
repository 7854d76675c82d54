#pragma once

#include "citywalk/canonical_json.hpp"
#include "citywalk/instruction.hpp"
#include "citywalk/perception.hpp"
#include "citywalk/routing.hpp"

namespace citywalk {

// JSON converters for the domain types that cross process boundaries: the
// provider wire protocol, route/instruction documents and result records.
// Parsers throw SchemaError with a field path on malformed input.

Json pose_to_json(const Pose& p);
Pose pose_from_json(const Json& j, const std::string& path = "pose");

Json bbox_to_json(const BBox& b);
BBox bbox_from_json(const Json& j, const std::string& path = "bbox");

Json proposal_to_json(const ObjectProposal& p);
ObjectProposal proposal_from_json(const Json& j, const std::string& path = "proposal");

Json visible_entity_to_json(const VisibleEntity& e);
Json view_to_json(const SymbolicView& v);

Json detection_record_to_json(const DetectionRecord& r);
DetectionRecord detection_record_from_json(const Json& j,
                                           const std::string& path = "detection");

Json match_result_to_json(const MatchResult& r);

Json route_to_json(const Route& r);
Route route_from_json(const Json& j, const std::string& path = "route");

Json instruction_to_json(const Instruction& i);
Instruction instruction_from_json(const Json& j, const std::string& path = "instruction");

}  // namespace citywalk
