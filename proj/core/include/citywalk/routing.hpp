#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citywalk/mobility.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

enum class KeyKind { start, intersection, stop };

std::string to_string(KeyKind k);

struct KeyPosition {
    std::string node_id;
    KeyKind kind = KeyKind::start;
};

struct RouteLeg {
    std::vector<std::string> nodes;  // inclusive of both key endpoints
    double length = 0.0;
};

/**
 * A planned route: key positions (start / intersections / stop) with the
 * shortest-path legs between consecutive key positions. Intersections are
 * interior nodes of street degree >= 3.
 */
struct Route {
    std::string id;
    std::vector<KeyPosition> key_positions;
    std::vector<RouteLeg> legs;
    double total_length = 0.0;
    TransportMode mode = TransportMode::walk;

    /// Full node sequence from start to stop.
    std::vector<std::string> path_nodes() const;
};

/// Dijkstra distances from `source` to every reachable node.
std::map<std::string, double> shortest_path_lengths(const World& w,
                                                    const std::string& source);

/// Shortest path as a node sequence, or nullopt when unreachable.
std::optional<std::vector<std::string>> shortest_path(const World& w,
                                                      const std::string& from,
                                                      const std::string& to);

/// Shortest route between two nodes. Throws Unreachable / UnknownNode.
Route plan_route(const World& w, const std::string& start, const std::string& goal,
                 TransportMode mode = TransportMode::walk);

/// Route over an explicit node path (consecutive nodes must be adjacent).
Route make_route_from_path(const World& w, const std::vector<std::string>& path,
                           TransportMode mode = TransportMode::walk);

/// total_length / mode speed, in seconds.
double estimate_travel_time(const Route& route, TransportMode mode,
                            const SpeedTable& speeds = {});

/// Above this many waypoints the ordering switches from exhaustive search to
/// nearest-neighbor + 2-opt.
inline constexpr int kExactWaypointLimit = 8;

struct WaypointPlan {
    std::vector<std::string> ordering;  // waypoint ids in visit order
    Route route;
};

/// Visit order over `waypoints` starting from `start` minimizing total
/// shortest-path length. Exact for <= kExactWaypointLimit waypoints,
/// heuristic (never worse than the given order) beyond. Throws Unreachable.
WaypointPlan optimize_waypoint_order(const World& w, const std::string& start,
                                     const std::vector<std::string>& waypoints,
                                     TransportMode mode = TransportMode::walk);

/**
 * Open-path traveling-salesman order over a symmetric distance matrix:
 * multi-start nearest neighbor refined by 2-opt until no improving swap.
 * With `fixed_first`, index 0 stays the first element of the order.
 */
std::vector<int> tsp_order(const std::vector<std::vector<double>>& dist,
                           bool fixed_first = false);

/// Cost of an open path under a distance matrix.
double tsp_path_cost(const std::vector<std::vector<double>>& dist,
                     const std::vector<int>& order);

}  // namespace citywalk
