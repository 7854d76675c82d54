#include "citywalk/vln_eval.hpp"

#include <algorithm>
#include <cmath>

#include "citywalk/errors.hpp"
#include "citywalk/perception.hpp"

namespace citywalk {

namespace {

// Execute one VLN action. Turns rotate toward +/-90 degrees and take the
// closest edge; forward keeps the straightest edge. Movement goes through
// step() with the exact edge heading, so the trajectory stays well-formed.
AgentState execute_action(const World& w, const AgentState& s, Action action,
                          MoverMode mode) {
    const auto dirs = navigable_directions(w, s.node_id, mode);
    if (dirs.empty()) return s;  // boxed in; the budget will expire
    double target = s.pose.heading;
    if (action == Action::turn_left) target = normalize_heading(s.pose.heading - 90.0);
    if (action == Action::turn_right) target = normalize_heading(s.pose.heading + 90.0);
    const Direction* best = nullptr;
    double best_off = 0.0;
    for (const auto& d : dirs) {
        const double off = std::fabs(angular_offset(target, d.heading));
        if (!best || off < best_off || (off == best_off && d.heading < best->heading)) {
            best = &d;
            best_off = off;
        }
    }
    return step(w, s, best->heading, mode);
}

}  // namespace

VlnEpisodeRecord run_vln_episode(const World& w, const Route& route,
                                 const Instruction& instr, DetectProvider& perception,
                                 VlnPolicy& policy, const VlnRunConfig& cfg) {
    const auto& keys = route.key_positions;
    if (keys.empty()) throw Error("route has no key positions");
    if (instr.segments.size() != keys.size()) {
        throw Error("instruction does not match the route's key positions");
    }
    const auto path = route.path_nodes();
    const GeoCoordinate stop_coord = w.node(keys.back().node_id).coord;
    const int budget = cfg.budget_factor * static_cast<int>(path.size());

    double heading = 0.0;
    if (path.size() >= 2) {
        heading = initial_bearing(w.node(path[0]).coord, w.node(path[1]).coord);
    }
    AgentState agent = make_agent(w, keys.front().node_id, Pose(heading, 0.0, kVlnViewFovDeg));

    VlnEpisodeRecord rec;
    rec.route_id = route.id;
    rec.start.total = 1;
    for (size_t i = 1; i + 1 < keys.size(); ++i) ++rec.intersection.total;
    rec.stop.total = 1;

    const auto landmark_names = instr.landmark_names();
    std::vector<bool> visited(keys.size(), false);
    bool stop_reached = false;
    bool stopped = false;

    for (int t = 0; t < budget; ++t) {
        const VLNObservation obs =
            observe_vln(w, agent, perception, landmark_names, cfg.mover,
                        cfg.visibility_range_m);
        const Action action = vln_step(agent, obs, instr, policy);
        ++rec.steps;

        // Key-position bookkeeping (stop class handled by distance below).
        for (size_t i = 0; i + 1 < keys.size(); ++i) {
            if (visited[i] || keys[i].node_id != agent.node_id) continue;
            visited[i] = true;
            const bool correct = action == instr.segments[i].action;
            if (i == 0) {
                rec.start.reached = 1;
                rec.start.correct = correct ? 1 : 0;
            } else {
                ++rec.intersection.reached;
                if (correct) ++rec.intersection.correct;
            }
            break;
        }
        const double dist_to_stop =
            haversine_distance(w.node(agent.node_id).coord, stop_coord);
        if (dist_to_stop <= cfg.success_radius_m) stop_reached = true;

        if (action == Action::stop) {
            stopped = true;
            break;
        }
        agent = execute_action(w, agent, action, cfg.mover);
    }

    rec.budget_exhausted = !stopped;
    rec.final_distance_m = haversine_distance(w.node(agent.node_id).coord, stop_coord);
    rec.success = stopped && rec.final_distance_m <= cfg.success_radius_m;
    rec.stop.reached = stop_reached ? 1 : 0;
    rec.stop.correct = rec.success ? 1 : 0;
    return rec;
}

VLNReport aggregate_vln(const std::vector<VlnEpisodeRecord>& records) {
    if (records.empty()) throw Error("aggregate_vln needs at least one record");
    VLNReport rep;
    rep.routes = static_cast<int>(records.size());
    long start_reached = 0, start_correct = 0;
    long int_total = 0, int_reached = 0, int_correct = 0;
    long stop_total = 0, stop_reached = 0, stop_correct = 0;
    int successes = 0;
    for (const auto& r : records) {
        if (r.success) ++successes;
        start_reached += r.start.reached;
        start_correct += r.start.correct;
        int_total += r.intersection.total;
        int_reached += r.intersection.reached;
        int_correct += r.intersection.correct;
        stop_total += r.stop.total;
        stop_reached += r.stop.reached;
        stop_correct += r.stop.correct;
    }
    auto ratio = [](long num, long denom) {
        return denom == 0 ? 1.0 : static_cast<double>(num) / denom;
    };
    rep.success = static_cast<double>(successes) / records.size();
    rep.start_reac = ratio(start_correct, start_reached);
    rep.intersection_arr = ratio(int_reached, int_total);
    rep.intersection_reac = ratio(int_correct, int_reached);
    rep.stop_arr = ratio(stop_reached, stop_total);
    rep.stop_reac = ratio(stop_correct, stop_reached);
    return rep;
}

}  // namespace citywalk
