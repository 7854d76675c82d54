#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citywalk/geo.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

// Web panoramas expose only the subset of links marked web-visible;
// the grid mover sees every graph edge.
enum class MoverMode { web, grid };

enum class TransportMode { walk, bicycle, drive };

TransportMode parse_transport_mode(const std::string& s);  // throws UnknownMode
std::string to_string(TransportMode m);

struct SpeedTable {
    double walk_mps = 1.4;
    double bicycle_mps = 4.2;
    double drive_mps = 8.3;

    double speed(TransportMode m) const;
};

struct TrajectoryEntry {
    std::string node_id;
    Pose pose;
    int step_index = 0;
};

struct AgentState {
    std::string node_id;
    Pose pose;
    std::vector<TrajectoryEntry> trajectory;  // append-only, entry 0 is the spawn
    std::uint64_t rng_seed = 0;
};

/// Spawn an agent on a node. Throws UnknownNode.
AgentState make_agent(const World& w, const std::string& node_id, const Pose& pose,
                      std::uint64_t rng_seed = 0);

struct Direction {
    double heading = 0.0;
    std::string neighbor_id;
};

/// Navigable directions at a node, sorted by (heading, neighbor id).
/// Web mode is always a subset of grid mode.
std::vector<Direction> navigable_directions(const World& w, const std::string& node_id,
                                            MoverMode mode);

/// Max deviation between a requested heading and an edge heading for step().
inline constexpr double kHeadingToleranceDeg = 15.0;

/// Move one edge: picks the navigable direction within the heading tolerance
/// (closest offset wins, then smaller heading), re-orients the agent along
/// the edge and appends a trajectory entry. Throws NoEdgeInDirection.
AgentState step(const World& w, const AgentState& s, double heading, MoverMode mode);

}  // namespace citywalk
