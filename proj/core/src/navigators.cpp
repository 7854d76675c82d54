#include "citywalk/navigators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "citywalk/errors.hpp"
#include "citywalk/perception.hpp"

namespace citywalk {

namespace {

// One greedy move toward `target`: the direction minimizing edge length plus
// remaining distance, required to strictly reduce the remaining distance.
// Returns false when no navigable direction makes progress.
bool greedy_move(const World& w, AgentState& s, const std::string& target,
                 const std::map<std::string, double>& dist_to_target, MoverMode mode) {
    const auto dirs = navigable_directions(w, s.node_id, mode);
    auto here = dist_to_target.find(s.node_id);
    const double current = here == dist_to_target.end()
                               ? std::numeric_limits<double>::infinity()
                               : here->second;
    const Direction* best = nullptr;
    double best_cost = 0.0;
    for (const auto& d : dirs) {
        auto it = dist_to_target.find(d.neighbor_id);
        if (it == dist_to_target.end() || it->second >= current) continue;
        double edge = 0.0;
        for (const auto& link : w.node(s.node_id).neighbors) {
            if (link.node_id == d.neighbor_id) edge = link.length;
        }
        const double cost = edge + it->second;
        if (!best || cost < best_cost || (cost == best_cost && d.heading < best->heading)) {
            best = &d;
            best_cost = cost;
        }
    }
    if (!best) return false;
    s = step(w, s, best->heading, mode);
    return true;
}

AgentState navigate_impl(const World& w, const AgentState& start, const Route& route,
                         MoverMode mode, bool hybrid) {
    if (route.key_positions.empty()) throw Error("route has no key positions");
    if (start.node_id != route.key_positions.front().node_id) {
        throw Error("agent is not at the route start");
    }
    AgentState s = start;
    // Distances are computed toward each key position in turn; the mover can
    // hide edges but the map knowledge (like the route itself) is global.
    for (size_t k = 1; k < route.key_positions.size(); ++k) {
        const std::string& target = route.key_positions[k].node_id;
        if (s.node_id == target) continue;
        const auto dist = shortest_path_lengths(w, target);  // symmetric graph
        if (!dist.count(s.node_id)) throw Unreachable("key position unreachable: " + target);
        while (s.node_id != target) {
            if (greedy_move(w, s, target, dist, mode)) continue;
            if (hybrid && mode == MoverMode::web &&
                greedy_move(w, s, target, dist, MoverMode::grid)) {
                continue;  // grid fallback for this node only
            }
            throw Stuck("no navigable progress toward " + target + " from " + s.node_id);
        }
    }
    return s;
}

}  // namespace

AgentState point_navigate(const World& w, const AgentState& start, const Route& route,
                          MoverMode mode) {
    return navigate_impl(w, start, route, mode, /*hybrid=*/false);
}

AgentState point_navigate_hybrid(const World& w, const AgentState& start,
                                 const Route& route) {
    return navigate_impl(w, start, route, MoverMode::web, /*hybrid=*/true);
}

std::vector<std::string> region_navigate_plan(const World& w, const GeoPolygon& region) {
    std::vector<std::string> inside;
    for (const auto& [id, n] : w.nodes()) {
        if (point_in_polygon(n.coord, region)) inside.push_back(id);
    }
    if (inside.empty()) throw EmptyRegion("region contains no street nodes");
    if (inside.size() == 1) return inside;

    const int n = static_cast<int>(inside.size());
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const auto lengths = shortest_path_lengths(w, inside[i]);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            auto it = lengths.find(inside[j]);
            if (it == lengths.end()) {
                throw Unreachable("region nodes are not mutually reachable");
            }
            dist[i][j] = it->second;
        }
    }
    std::vector<std::string> plan;
    for (int idx : tsp_order(dist)) plan.push_back(inside[idx]);
    return plan;
}

// --- VLN --------------------------------------------------------------------

std::string to_string(ViewDirection d) {
    switch (d) {
        case ViewDirection::front: return "front";
        case ViewDirection::left_front: return "left_front";
        case ViewDirection::left: return "left";
        case ViewDirection::left_behind: return "left_behind";
        case ViewDirection::behind: return "behind";
        case ViewDirection::right_behind: return "right_behind";
        case ViewDirection::right: return "right";
        case ViewDirection::right_front: return "right_front";
    }
    return "?";
}

VLNObservation observe_vln(const World& w, const AgentState& s, DetectProvider& perception,
                           const std::vector<std::string>& landmark_names, MoverMode mode,
                           double visibility_range) {
    static constexpr double kOffsets[kVlnViewCount] = {0.0,    -45.0, -90.0, -135.0,
                                                       180.0, 135.0, 90.0,  45.0};
    static constexpr ViewDirection kDirections[kVlnViewCount] = {
        ViewDirection::front,        ViewDirection::left_front, ViewDirection::left,
        ViewDirection::left_behind,  ViewDirection::behind,     ViewDirection::right_behind,
        ViewDirection::right,        ViewDirection::right_front};

    std::vector<Pose> poses;
    poses.reserve(kVlnViewCount);
    for (double off : kOffsets) {
        poses.emplace_back(s.pose.heading + off, s.pose.pitch, kVlnViewFovDeg);
    }
    const auto views = render_views(w, s.node_id, poses, visibility_range);

    VLNObservation obs;
    for (int i = 0; i < kVlnViewCount; ++i) {
        DirectionalView dv;
        dv.direction = kDirections[i];
        for (const auto& prop : perception.detect(views[i], landmark_names)) {
            dv.landmark_names.push_back(prop.label);
        }
        std::sort(dv.landmark_names.begin(), dv.landmark_names.end());
        dv.landmark_names.erase(
            std::unique(dv.landmark_names.begin(), dv.landmark_names.end()),
            dv.landmark_names.end());
        obs.directional_views[i] = std::move(dv);
    }
    obs.intersection_degree =
        static_cast<int>(navigable_directions(w, s.node_id, mode).size());
    return obs;
}

namespace {

bool landmark_observed(const VLNObservation& obs, const std::string& name) {
    for (const auto& dv : obs.directional_views) {
        if (std::binary_search(dv.landmark_names.begin(), dv.landmark_names.end(), name)) {
            return true;
        }
    }
    return false;
}

}  // namespace

Action ScriptedVlnPolicy::decide(const VLNObservation& obs, const Instruction& instr) {
    const auto& segments = instr.segments;
    if (segment_ >= segments.size()) return Action::stop;

    // The start node never counts toward intersection ordinals.
    const bool at_intersection = obs.intersection_degree >= 3;
    if (at_intersection && !first_decision_) ++intersections_seen_;
    first_decision_ = false;

    auto fired = [&](const Segment& seg) {
        const Trigger& t = seg.trigger;
        switch (t.kind) {
            case TriggerKind::at_intersection:
                return at_intersection && intersections_seen_ >= t.ordinal;
            case TriggerKind::at_landmark:
                // The landmark must be in sight and this must be the right
                // corner; landmarks alone can be visible a block early.
                return landmark_observed(obs, t.place_name) && at_intersection &&
                       intersections_seen_ >= t.ordinal;
            case TriggerKind::at_destination: {
                if (moves_since_anchor_ < t.steps) return false;
                if (!t.place_name.empty()) return landmark_observed(obs, t.place_name);
                return true;
            }
        }
        return false;
    };

    // Consume forward segments whose trigger has fired (without disturbing
    // the move counter), then act on the first non-forward segment that
    // fires at this same position.
    while (segment_ < segments.size() && segments[segment_].action == Action::forward &&
           fired(segments[segment_])) {
        ++segment_;
    }
    if (segment_ < segments.size() && segments[segment_].action != Action::forward &&
        fired(segments[segment_])) {
        const Action act = segments[segment_].action;
        ++segment_;
        // A turn moves one edge past its corner, which becomes the new anchor.
        moves_since_anchor_ = 1;
        return act;
    }
    ++moves_since_anchor_;
    return Action::forward;
}

Action ProviderVlnPolicy::decide(const VLNObservation& obs, const Instruction& instr) {
    static const std::vector<std::string> kOptions = {"forward", "turn_left", "turn_right",
                                                      "stop"};
    std::string context = "Instruction: " + instr.verbalization + "\n";
    context += "Intersection degree: " + std::to_string(obs.intersection_degree) + "\n";
    for (const auto& dv : obs.directional_views) {
        if (dv.landmark_names.empty()) continue;
        context += to_string(dv.direction) + ":";
        for (const auto& n : dv.landmark_names) context += " " + n;
        context += "\n";
    }
    if (!history_.empty()) {
        context += "History:";
        for (const auto& h : history_) context += " " + h;
        context += "\n";
    }
    const Choice c = chooser_->choose(kOptions, context);
    if (c.index < 0 || c.index >= static_cast<int>(kOptions.size())) {
        throw InvalidAction("policy chose option " + std::to_string(c.index));
    }
    history_.push_back(kOptions[c.index]);
    return action_from_string(kOptions[c.index]);
}

Action vln_step(const AgentState&, const VLNObservation& obs, const Instruction& instr,
                VlnPolicy& policy) {
    return policy.decide(obs, instr);
}

// --- Intention navigation ----------------------------------------------------

RoadChoice intention_navigate_choose(const std::vector<SymbolicView>& road_views,
                                     ChooseProvider& reasoner, const World& w,
                                     const std::string& intention) {
    if (road_views.size() < 2) {
        throw std::invalid_argument("road selection needs at least two roads");
    }
    // Stage one: caption each road from what is visible along it.
    std::vector<std::string> captions;
    for (size_t i = 0; i < road_views.size(); ++i) {
        std::string caption = "road " + std::to_string(i) + ":";
        if (road_views[i].visible_entities.empty()) {
            caption += " nothing notable";
        } else {
            for (const auto& e : road_views[i].visible_entities) {
                caption += " " + e.category;
                auto it = w.places().find(e.entity_id);
                if (it != w.places().end()) caption += " (" + it->second.name + ")";
            }
        }
        captions.push_back(std::move(caption));
    }
    // Stage two: the reasoner picks the road serving the intention.
    Choice c;
    try {
        c = reasoner.choose(captions, "intention: " + intention);
    } catch (const UnparseableAnswer& e) {
        throw ProviderError(e.what());
    }
    if (c.index < 0 || c.index >= static_cast<int>(road_views.size())) {
        throw IndexOutOfRange("reasoner chose road " + std::to_string(c.index) + " of " +
                              std::to_string(road_views.size()));
    }
    return {c.index, c.rationale};
}

}  // namespace citywalk
