#include "citywalk/mobility.hpp"

#include <algorithm>
#include <cmath>

#include "citywalk/errors.hpp"

namespace citywalk {

TransportMode parse_transport_mode(const std::string& s) {
    if (s == "walk") return TransportMode::walk;
    if (s == "bicycle") return TransportMode::bicycle;
    if (s == "drive") return TransportMode::drive;
    throw UnknownMode("unknown transport mode: " + s);
}

std::string to_string(TransportMode m) {
    switch (m) {
        case TransportMode::walk: return "walk";
        case TransportMode::bicycle: return "bicycle";
        case TransportMode::drive: return "drive";
    }
    throw UnknownMode("invalid transport mode value");
}

double SpeedTable::speed(TransportMode m) const {
    switch (m) {
        case TransportMode::walk: return walk_mps;
        case TransportMode::bicycle: return bicycle_mps;
        case TransportMode::drive: return drive_mps;
    }
    throw UnknownMode("invalid transport mode value");
}

AgentState make_agent(const World& w, const std::string& node_id, const Pose& pose,
                      std::uint64_t rng_seed) {
    const StreetNode& n = w.node(node_id);
    AgentState s;
    s.node_id = n.id;
    s.pose = pose;
    s.rng_seed = rng_seed;
    s.trajectory.push_back({n.id, pose, 0});
    return s;
}

std::vector<Direction> navigable_directions(const World& w, const std::string& node_id,
                                            MoverMode mode) {
    const StreetNode& n = w.node(node_id);
    std::vector<Direction> out;
    for (const auto& link : n.neighbors) {
        if (mode == MoverMode::web) {
            const bool visible = std::binary_search(n.web_visible_neighbors.begin(),
                                                    n.web_visible_neighbors.end(),
                                                    link.node_id);
            if (!visible) continue;
        }
        out.push_back({link.heading, link.node_id});
    }
    std::sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) {
        if (a.heading != b.heading) return a.heading < b.heading;
        return a.neighbor_id < b.neighbor_id;
    });
    return out;
}

AgentState step(const World& w, const AgentState& s, double heading, MoverMode mode) {
    const auto dirs = navigable_directions(w, s.node_id, mode);
    const Direction* best = nullptr;
    double best_off = 0.0;
    for (const auto& d : dirs) {
        const double off = std::fabs(angular_offset(heading, d.heading));
        if (off > kHeadingToleranceDeg) continue;
        if (!best || off < best_off ||
            (off == best_off && d.heading < best->heading)) {
            best = &d;
            best_off = off;
        }
    }
    if (!best) {
        throw NoEdgeInDirection("no navigable direction within " +
                                std::to_string(kHeadingToleranceDeg) + " degrees of heading");
    }
    AgentState next = s;
    next.node_id = best->neighbor_id;
    next.pose = Pose(best->heading, s.pose.pitch, s.pose.fov);
    next.trajectory.push_back(
        {next.node_id, next.pose, static_cast<int>(s.trajectory.size())});
    return next;
}

}  // namespace citywalk
