#include "citywalk/perception.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "citywalk/errors.hpp"
#include "citywalk/providers.hpp"

namespace citywalk {

double bearing_to_image_x(const Pose& pose, double bearing) {
    return 0.5 + angular_offset(pose.heading, bearing) / pose.fov;
}

double image_x_to_bearing(const Pose& pose, double x) {
    return normalize_heading(pose.heading + (x - 0.5) * pose.fov);
}

namespace {

struct RawEntity {
    std::string id;
    std::string category;
    GeoCoordinate coord;
    double width_m;
    double height_m;
};

std::vector<RawEntity> all_entities(const World& w) {
    std::vector<RawEntity> out;
    out.reserve(w.places().size() + w.instances().size());
    for (const auto& [id, p] : w.places()) {
        out.push_back({id, p.types.front(), p.coord, kPlaceWidthM, kPlaceHeightM});
    }
    for (const auto& [id, o] : w.instances()) {
        out.push_back({id, o.category, o.coord, o.width_m, o.height_m});
    }
    return out;
}

int occlusion_bucket(double bearing) {
    return static_cast<int>(std::floor(normalize_heading(bearing) / kOcclusionBucketDeg));
}

BBox make_bbox(const Pose& pose, double offset_deg, double distance, double width_m,
               double height_m) {
    const double half_w_deg = rad2deg(std::atan2(width_m * 0.5, distance));
    const double half_h_deg = rad2deg(std::atan2(height_m * 0.5, distance));
    double x0 = 0.5 + (offset_deg - half_w_deg) / pose.fov;
    double x1 = 0.5 + (offset_deg + half_w_deg) / pose.fov;
    double y0 = 0.5 - half_h_deg / pose.fov;
    double y1 = 0.5 + half_h_deg / pose.fov;
    x0 = std::clamp(x0, 0.0, 1.0);
    x1 = std::clamp(x1, 0.0, 1.0);
    y0 = std::clamp(y0, 0.0, 1.0);
    y1 = std::clamp(y1, 0.0, 1.0);
    BBox b;
    b.cx = 0.5 * (x0 + x1);
    b.cy = 0.5 * (y0 + y1);
    b.w = x1 - x0;
    b.h = y1 - y0;
    return b;
}

}  // namespace

std::vector<SymbolicView> render_views(const World& w, const std::string& node_id,
                                       const std::vector<Pose>& poses,
                                       double visibility_range) {
    const StreetNode& node = w.node(node_id);
    const auto entities = all_entities(w);

    // Range gate plus occlusion: the nearest entity per 1-degree bearing
    // bucket blocks the ones behind it, independent of the pose.
    struct Seen {
        const RawEntity* entity;
        double distance;
        double bearing;
    };
    std::map<int, Seen> by_bucket;
    for (const auto& e : entities) {
        const double d = haversine_distance(node.coord, e.coord);
        if (d > visibility_range || d < 0.01) continue;
        const double bearing = initial_bearing(node.coord, e.coord);
        const int bucket = occlusion_bucket(bearing);
        auto it = by_bucket.find(bucket);
        if (it == by_bucket.end() || d < it->second.distance ||
            (d == it->second.distance && e.id < it->second.entity->id)) {
            by_bucket[bucket] = {&e, d, bearing};
        }
    }

    std::vector<SymbolicView> views;
    views.reserve(poses.size());
    for (const auto& pose : poses) {
        SymbolicView view;
        view.node_id = node_id;
        view.pose = pose;
        for (const auto& [bucket, seen] : by_bucket) {
            const double offset = angular_offset(pose.heading, seen.bearing);
            if (std::fabs(offset) > pose.fov * 0.5) continue;
            VisibleEntity ve;
            ve.entity_id = seen.entity->id;
            ve.category = seen.entity->category;
            ve.distance = seen.distance;
            ve.bearing = seen.bearing;
            ve.bbox = make_bbox(pose, offset, seen.distance, seen.entity->width_m,
                                seen.entity->height_m);
            view.visible_entities.push_back(std::move(ve));
        }
        std::sort(view.visible_entities.begin(), view.visible_entities.end(),
                  [](const VisibleEntity& a, const VisibleEntity& b) {
                      return a.entity_id < b.entity_id;
                  });
        views.push_back(std::move(view));
    }
    return views;
}

namespace {

struct FrustumHit {
    std::string id;
    double distance;
};

// Shared frustum assignment: nearest entity whose bearing falls inside the
// proposal's bearing interval, within the radius.
template <typename Iter, typename GetCoord>
std::optional<FrustumHit> frustum_nearest(const World& w, const ObjectProposal& p,
                                          double radius_m, Iter begin, Iter end,
                                          GetCoord get_coord) {
    const GeoCoordinate origin = w.node(p.source_node_id).coord;
    const Pose& pose = p.source_pose;
    const double x0 = std::clamp(p.bbox.cx - p.bbox.w * 0.5, 0.0, 1.0);
    const double x1 = std::clamp(p.bbox.cx + p.bbox.w * 0.5, 0.0, 1.0);
    const double off_lo = (x0 - 0.5) * pose.fov;
    const double off_hi = (x1 - 0.5) * pose.fov;

    std::optional<FrustumHit> best;
    for (Iter it = begin; it != end; ++it) {
        const GeoCoordinate& c = get_coord(*it);
        const double d = haversine_distance(origin, c);
        if (d > radius_m || d < 0.01) continue;
        const double off = angular_offset(pose.heading, initial_bearing(origin, c));
        if (off < off_lo || off > off_hi) continue;
        if (!best || d < best->distance || (d == best->distance && it->first < best->id)) {
            best = {it->first, d};
        }
    }
    return best;
}

}  // namespace

MatchResult match_proposal_to_place(const World& w, const ObjectProposal& p,
                                    double radius_m) {
    MatchResult res;
    res.proposal = p;
    auto hit = frustum_nearest(w, p, radius_m, w.places().begin(), w.places().end(),
                               [](const auto& kv) -> const GeoCoordinate& {
                                   return kv.second.coord;
                               });
    if (hit) {
        res.matched = true;
        res.place_id = hit->id;
        res.distance = hit->distance;
    }
    return res;
}

std::optional<std::string> match_proposal_to_instance(const World& w,
                                                      const ObjectProposal& p,
                                                      double radius_m,
                                                      bool require_category) {
    // Collect candidates first so the category filter stays cheap.
    std::vector<std::pair<std::string, const ObjectInstance*>> candidates;
    for (const auto& [id, o] : w.instances()) {
        if (require_category && o.category != p.label) continue;
        candidates.emplace_back(id, &o);
    }
    auto hit = frustum_nearest(w, p, radius_m, candidates.begin(), candidates.end(),
                               [](const auto& kv) -> const GeoCoordinate& {
                                   return kv.second->coord;
                               });
    if (!hit) return std::nullopt;
    return hit->id;
}

ObjectProposal active_detect(const World& w, const std::string& node_id,
                             const ObjectProposal& candidate, DetectProvider& provider,
                             double visibility_range) {
    const double center_bearing =
        image_x_to_bearing(candidate.source_pose, candidate.bbox.cx);
    const int target_bucket = static_cast<int>(
        std::floor(normalize_heading(center_bearing) / kOcclusionBucketDeg));

    std::optional<ObjectProposal> refined;
    for (double fov : kActiveFovScheduleDeg) {
        if (fov > candidate.source_pose.fov) continue;  // never widen
        const Pose aim(center_bearing, candidate.source_pose.pitch, fov);
        const auto views = render_views(w, node_id, {aim}, visibility_range);
        const auto proposals = provider.detect(views[0], {candidate.label});

        const ObjectProposal* best = nullptr;
        for (const auto& prop : proposals) {
            const double b = image_x_to_bearing(aim, prop.bbox.cx);
            const int bucket =
                static_cast<int>(std::floor(normalize_heading(b) / kOcclusionBucketDeg));
            if (bucket != target_bucket) continue;
            if (!best || prop.score > best->score ||
                (prop.score == best->score && prop.bbox.area() > best->bbox.area())) {
                best = &prop;
            }
        }
        if (best) {
            refined = *best;
            if (refined->bbox.area() >= kActiveStopArea) break;
        }
    }
    if (!refined) {
        throw LostTarget("candidate not re-acquired at any FOV level");
    }
    return *refined;
}

std::vector<InstanceGroup> deduplicate(const std::vector<DetectionRecord>& detections,
                                       MatchProvider& matcher) {
    std::vector<InstanceGroup> groups;
    for (std::size_t i = 0; i < detections.size(); ++i) {
        bool placed = false;
        for (auto& g : groups) {
            if (matcher.match(g.representative, detections[i]).same) {
                g.member_indices.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({{i}, detections[i]});
        }
    }
    return groups;
}

}  // namespace citywalk
