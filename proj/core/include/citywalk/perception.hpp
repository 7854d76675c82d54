#pragma once

#include <optional>
#include <string>
#include <vector>

#include "citywalk/geo.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

/// Normalized image-space box, (cx, cy) center with (w, h) extents in [0, 1].
struct BBox {
    double cx = 0.5;
    double cy = 0.5;
    double w = 0.0;
    double h = 0.0;

    double area() const { return w * h; }
    bool operator==(const BBox&) const = default;
};

/// One entity as seen from a pose: either a place or an object instance.
struct VisibleEntity {
    std::string entity_id;
    std::string category;  // place primary type or instance category
    BBox bbox;
    double distance = 0.0;  // meters
    double bearing = 0.0;   // absolute degrees
};

/// What a camera at a node sees under one pose. Purely symbolic: visibility
/// is angular containment within the FOV, range-limited, with a
/// nearest-per-degree occlusion rule.
struct SymbolicView {
    std::string node_id;
    Pose pose;
    std::vector<VisibleEntity> visible_entities;
};

struct ObjectProposal {
    BBox bbox;
    std::string label;
    double score = 1.0;
    std::string source_node_id;
    Pose source_pose;
};

struct MatchResult {
    ObjectProposal proposal;
    bool matched = false;
    std::string place_id;   // set when matched
    double distance = 0.0;  // meters to the matched place
};

/// Frustum radius used when projecting proposals onto places.
inline constexpr double kDefaultFrustumRadiusM = 30.0;

/// Default sensing range of the symbolic camera.
inline constexpr double kDefaultVisibilityRangeM = 60.0;

/// Flat angular size assumed for place storefronts (meters).
inline constexpr double kPlaceWidthM = 8.0;
inline constexpr double kPlaceHeightM = 4.0;

/// Occlusion bucket width in degrees: the nearest entity per bucket wins.
inline constexpr double kOcclusionBucketDeg = 1.0;

/// Horizontal pixel position of an absolute bearing under a pose, using the
/// linear angular mapping the whole pipeline inverts exactly.
double bearing_to_image_x(const Pose& pose, double bearing);

/// Inverse of bearing_to_image_x.
double image_x_to_bearing(const Pose& pose, double x);

/**
 * Render symbolic views at a node. An entity is visible iff it is within
 * range, within the horizontal FOV and not occluded by a nearer entity in
 * the same 1-degree bearing bucket. Throws UnknownNode.
 */
std::vector<SymbolicView> render_views(const World& w, const std::string& node_id,
                                       const std::vector<Pose>& poses,
                                       double visibility_range = kDefaultVisibilityRangeM);

/**
 * Project a proposal's bearing interval into the world and assign the
 * nearest in-interval place within `radius_m`; false positive when the
 * frustum is empty. Places behind the camera never match.
 */
MatchResult match_proposal_to_place(const World& w, const ObjectProposal& p,
                                    double radius_m = kDefaultFrustumRadiusM);

/// Same frustum assignment against object instances (used by the oracle
/// feature matcher and the counting tasks).
std::optional<std::string> match_proposal_to_instance(
    const World& w, const ObjectProposal& p, double radius_m = kDefaultFrustumRadiusM,
    bool require_category = true);

class DetectProvider;  // providers.hpp

/// FOV narrowing schedule for active detection; levels above the candidate's
/// own FOV are skipped so the camera never widens.
inline constexpr double kActiveFovScheduleDeg[] = {120.0, 60.0, 30.0};
inline constexpr double kActiveStopArea = 0.2;

/**
 * Re-aim the camera at a candidate proposal and narrow the FOV stepwise,
 * re-detecting at each level; returns the refined proposal from the last
 * level that still saw the candidate's bearing bucket.
 * Throws LostTarget when no level re-acquires it.
 */
ObjectProposal active_detect(const World& w, const std::string& node_id,
                             const ObjectProposal& candidate, DetectProvider& provider,
                             double visibility_range = kDefaultVisibilityRangeM);

struct DetectionRecord {
    ObjectProposal proposal;
    std::string node_id;  // where the detection was made
};

class MatchProvider;  // providers.hpp

struct InstanceGroup {
    std::vector<std::size_t> member_indices;  // into the input detection list
    DetectionRecord representative;           // first member
};

/**
 * Greedy cross-view deduplication: each detection joins the first existing
 * group whose representative the matcher declares the same object, else it
 * founds a new group.
 */
std::vector<InstanceGroup> deduplicate(const std::vector<DetectionRecord>& detections,
                                       MatchProvider& matcher);

}  // namespace citywalk
