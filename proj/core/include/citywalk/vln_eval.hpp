#pragma once

#include <optional>
#include <string>
#include <vector>

#include "citywalk/navigators.hpp"

namespace citywalk {

/// Success radius around the destination, meters.
inline constexpr double kVlnSuccessRadiusM = 25.0;
/// Step budget multiplier over the route's node count.
inline constexpr int kVlnBudgetFactor = 3;

struct VlnRunConfig {
    double success_radius_m = kVlnSuccessRadiusM;
    int budget_factor = kVlnBudgetFactor;
    MoverMode mover = MoverMode::grid;
    double visibility_range_m = kVlnVisibilityRangeM;
};

struct KeyClassStats {
    int total = 0;
    int reached = 0;
    int correct = 0;  // correct action among reached
};

struct VlnEpisodeRecord {
    std::string route_id;
    bool success = false;
    bool budget_exhausted = false;
    int steps = 0;
    double final_distance_m = 0.0;
    KeyClassStats start;
    KeyClassStats intersection;
    KeyClassStats stop;
};

/**
 * Run one instruction-following episode: observe (eight views + intersection
 * degree), let the policy pick an action, execute it, until `stop` or the
 * step budget runs out (which counts as failure). Success means the agent
 * stopped within the success radius of the destination.
 */
VlnEpisodeRecord run_vln_episode(const World& w, const Route& route,
                                 const Instruction& instr, DetectProvider& perception,
                                 VlnPolicy& policy, const VlnRunConfig& cfg = {});

struct VLNReport {
    double success = 0.0;
    double start_reac = 0.0;
    double intersection_arr = 0.0;
    double intersection_reac = 0.0;
    double stop_arr = 0.0;
    double stop_reac = 0.0;
    int routes = 0;
};

/// Fold per-route records: Arr = reached/total per class; Reac counts
/// correct actions among reached positions only.
VLNReport aggregate_vln(const std::vector<VlnEpisodeRecord>& records);

}  // namespace citywalk
