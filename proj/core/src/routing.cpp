#include "citywalk/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "citywalk/errors.hpp"

namespace citywalk {

std::string to_string(KeyKind k) {
    switch (k) {
        case KeyKind::start: return "start";
        case KeyKind::intersection: return "intersection";
        case KeyKind::stop: return "stop";
    }
    return "?";
}

std::vector<std::string> Route::path_nodes() const {
    std::vector<std::string> out;
    for (const auto& leg : legs) {
        for (size_t i = 0; i < leg.nodes.size(); ++i) {
            if (!out.empty() && i == 0) continue;  // shared key endpoint
            out.push_back(leg.nodes[i]);
        }
    }
    if (out.empty() && !key_positions.empty()) out.push_back(key_positions.front().node_id);
    return out;
}

namespace {

struct DijkstraResult {
    std::map<std::string, double> dist;
    std::map<std::string, std::string> parent;
};

DijkstraResult dijkstra(const World& w, const std::string& source) {
    w.node(source);  // validate
    DijkstraResult res;
    using Item = std::pair<double, std::string>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    res.dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, id] = heap.top();
        heap.pop();
        auto it = res.dist.find(id);
        if (it != res.dist.end() && d > it->second) continue;  // stale entry
        for (const auto& link : w.node(id).neighbors) {
            const double nd = d + link.length;
            auto dit = res.dist.find(link.node_id);
            if (dit == res.dist.end() || nd < dit->second) {
                res.dist[link.node_id] = nd;
                res.parent[link.node_id] = id;
                heap.push({nd, link.node_id});
            }
        }
    }
    return res;
}

double edge_length(const World& w, const std::string& a, const std::string& b) {
    for (const auto& link : w.node(a).neighbors) {
        if (link.node_id == b) return link.length;
    }
    throw Error("nodes are not adjacent: " + a + ", " + b);
}

}  // namespace

std::map<std::string, double> shortest_path_lengths(const World& w,
                                                    const std::string& source) {
    return dijkstra(w, source).dist;
}

std::optional<std::vector<std::string>> shortest_path(const World& w,
                                                      const std::string& from,
                                                      const std::string& to) {
    w.node(to);
    if (from == to) return std::vector<std::string>{from};
    auto res = dijkstra(w, from);
    if (!res.dist.count(to)) return std::nullopt;
    std::vector<std::string> path;
    for (std::string cur = to; cur != from; cur = res.parent.at(cur)) {
        path.push_back(cur);
    }
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

Route make_route_from_path(const World& w, const std::vector<std::string>& path,
                           TransportMode mode) {
    if (path.empty()) throw Error("route path must not be empty");
    Route route;
    route.mode = mode;
    route.key_positions.push_back({path.front(), KeyKind::start});
    for (size_t i = 1; i + 1 < path.size(); ++i) {
        if (w.node(path[i]).neighbors.size() >= 3) {
            route.key_positions.push_back({path[i], KeyKind::intersection});
        }
    }
    route.key_positions.push_back({path.back(), KeyKind::stop});

    // Split the path into legs at key positions.
    size_t pos = 0;
    for (size_t k = 1; k < route.key_positions.size(); ++k) {
        RouteLeg leg;
        leg.nodes.push_back(path[pos]);
        while (path[pos] != route.key_positions[k].node_id || leg.nodes.size() == 1) {
            if (pos + 1 >= path.size()) break;
            ++pos;
            leg.length += edge_length(w, leg.nodes.back(), path[pos]);
            leg.nodes.push_back(path[pos]);
            if (path[pos] == route.key_positions[k].node_id) break;
        }
        route.total_length += leg.length;
        route.legs.push_back(std::move(leg));
    }
    route.id = path.front() + "-" + path.back();
    return route;
}

Route plan_route(const World& w, const std::string& start, const std::string& goal,
                 TransportMode mode) {
    auto path = shortest_path(w, start, goal);
    if (!path) throw Unreachable("no path from " + start + " to " + goal);
    return make_route_from_path(w, *path, mode);
}

double estimate_travel_time(const Route& route, TransportMode mode,
                            const SpeedTable& speeds) {
    const double v = speeds.speed(mode);
    if (v <= 0.0) throw UnknownMode("non-positive speed configured");
    return route.total_length / v;
}

double tsp_path_cost(const std::vector<std::vector<double>>& dist,
                     const std::vector<int>& order) {
    double cost = 0.0;
    for (size_t i = 0; i + 1 < order.size(); ++i) cost += dist[order[i]][order[i + 1]];
    return cost;
}

namespace {

std::vector<int> nearest_neighbor_from(const std::vector<std::vector<double>>& dist,
                                       int start) {
    const int n = static_cast<int>(dist.size());
    std::vector<int> order;
    std::vector<bool> used(n, false);
    order.push_back(start);
    used[start] = true;
    while (static_cast<int>(order.size()) < n) {
        const int cur = order.back();
        int best = -1;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            if (best < 0 || dist[cur][j] < dist[cur][best]) best = j;
        }
        order.push_back(best);
        used[best] = true;
    }
    return order;
}

void two_opt(const std::vector<std::vector<double>>& dist, std::vector<int>& order,
             bool fixed_first) {
    const int n = static_cast<int>(order.size());
    if (n < 3) return;
    const int lo = fixed_first ? 1 : 0;
    bool improved = true;
    while (improved) {
        improved = false;
        double best_delta = -1e-9;
        int best_i = -1, best_j = -1;
        for (int i = lo; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                // Reverse order[i..j]; only the boundary edges change.
                double delta = 0.0;
                if (i > 0) delta += dist[order[i - 1]][order[j]] - dist[order[i - 1]][order[i]];
                if (j < n - 1) delta += dist[order[i]][order[j + 1]] - dist[order[j]][order[j + 1]];
                if (delta < best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i >= 0) {
            std::reverse(order.begin() + best_i, order.begin() + best_j + 1);
            improved = true;
        }
    }
}

}  // namespace

std::vector<int> tsp_order(const std::vector<std::vector<double>>& dist,
                           bool fixed_first) {
    const int n = static_cast<int>(dist.size());
    if (n == 0) return {};
    if (n == 1) return {0};

    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    const int first_start = 0;
    const int last_start = fixed_first ? 0 : n - 1;
    for (int s = first_start; s <= last_start; ++s) {
        auto order = nearest_neighbor_from(dist, s);
        two_opt(dist, order, fixed_first);
        const double c = tsp_path_cost(dist, order);
        if (c < best_cost) {
            best_cost = c;
            best = std::move(order);
        }
    }
    return best;
}

WaypointPlan optimize_waypoint_order(const World& w, const std::string& start,
                                     const std::vector<std::string>& waypoints,
                                     TransportMode mode) {
    if (waypoints.empty()) throw Error("need at least one waypoint");
    std::vector<std::string> points;
    points.push_back(start);
    points.insert(points.end(), waypoints.begin(), waypoints.end());
    const int n = static_cast<int>(points.size());

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        auto lengths = shortest_path_lengths(w, points[i]);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            auto it = lengths.find(points[j]);
            if (it == lengths.end()) {
                throw Unreachable("waypoint unreachable: " + points[j]);
            }
            dist[i][j] = it->second;
        }
    }

    const int k = n - 1;
    std::vector<int> visit;  // waypoint indices (1-based into points)
    if (k <= kExactWaypointLimit) {
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 1);
        std::vector<int> best_perm = perm;
        double best_cost = std::numeric_limits<double>::infinity();
        do {
            double cost = dist[0][perm[0]];
            for (int i = 0; i + 1 < k; ++i) cost += dist[perm[i]][perm[i + 1]];
            if (cost < best_cost) {
                best_cost = cost;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        visit = best_perm;
    } else {
        // Both candidates keep the start pinned at position 0, so 2-opt can
        // only improve the true tour cost; the identity branch therefore
        // never ends up worse than in-order visitation.
        auto heuristic = tsp_order(dist, /*fixed_first=*/true);
        std::vector<int> identity(n);
        std::iota(identity.begin(), identity.end(), 0);
        two_opt(dist, identity, /*fixed_first=*/true);
        auto& chosen = tsp_path_cost(dist, heuristic) <= tsp_path_cost(dist, identity)
                           ? heuristic
                           : identity;
        visit.assign(chosen.begin() + 1, chosen.end());
    }

    WaypointPlan plan;
    std::vector<std::string> full_path{start};
    for (int idx : visit) {
        plan.ordering.push_back(points[idx]);
        auto leg = shortest_path(w, full_path.back(), points[idx]);
        if (!leg) throw Unreachable("waypoint unreachable: " + points[idx]);
        full_path.insert(full_path.end(), leg->begin() + 1, leg->end());
    }
    plan.route = make_route_from_path(w, full_path, mode);
    return plan;
}

}  // namespace citywalk
