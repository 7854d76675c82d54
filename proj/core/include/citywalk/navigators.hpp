#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "citywalk/instruction.hpp"
#include "citywalk/mobility.hpp"
#include "citywalk/providers.hpp"
#include "citywalk/routing.hpp"

namespace citywalk {

/**
 * Greedy point navigation: walk the route's key positions in order; at each
 * node take the navigable direction that most reduces the shortest-path
 * distance to the next unreached key position (ties to the smaller heading).
 * Throws
 * Stuck when no navigable direction makes progress (web mode can hide the
 * needed edge; callers may retry in grid mode).
 */
AgentState point_navigate(const World& w, const AgentState& start, const Route& route,
                          MoverMode mode);

/// Web-first variant: on a web-mode dead end, consult the grid mover for
/// that node only and continue.
AgentState point_navigate_hybrid(const World& w, const AgentState& start,
                                 const Route& route);

/**
 * Visit order over every street node inside the region: nearest-neighbor
 * seeded tour improved by 2-opt over shortest-path distances. Each in-region
 * node appears exactly once. Throws EmptyRegion.
 */
std::vector<std::string> region_navigate_plan(const World& w, const GeoPolygon& region);

// --- Vision-language navigation -------------------------------------------

/// Directional views around the agent, clockwise from dead ahead.
enum class ViewDirection {
    front,
    left_front,
    left,
    left_behind,
    behind,
    right_behind,
    right,
    right_front,
};

inline constexpr int kVlnViewCount = 8;
/// FOV of each of the eight VLN views (they tile the full circle).
inline constexpr double kVlnViewFovDeg = 45.0;
inline constexpr double kVlnVisibilityRangeM = 45.0;

std::string to_string(ViewDirection d);

struct DirectionalView {
    ViewDirection direction = ViewDirection::front;
    std::vector<std::string> landmark_names;  // sorted, deduplicated
};

struct VLNObservation {
    std::array<DirectionalView, kVlnViewCount> directional_views;
    int intersection_degree = 0;  // navigable directions at the current node
};

/// Capture the eight street views around the agent and run the perception
/// provider on each, looking for the instruction's landmark names.
VLNObservation observe_vln(const World& w, const AgentState& s, DetectProvider& perception,
                           const std::vector<std::string>& landmark_names,
                           MoverMode mode = MoverMode::grid,
                           double visibility_range = kVlnVisibilityRangeM);

/// Policy contract for VLN: one action per observation. Implementations may
/// keep per-episode state; use a fresh instance per episode.
class VlnPolicy {
public:
    virtual ~VlnPolicy() = default;
    virtual Action decide(const VLNObservation& obs, const Instruction& instr) = 0;
};

/**
 * Deterministic instruction-following automaton over (segment pointer,
 * trigger satisfaction). Counts intersections as the mover reports them,
 * consumes forward segments whose trigger has fired, and emits the next
 * segment's action when its trigger fires; otherwise keeps walking.
 */
class ScriptedVlnPolicy : public VlnPolicy {
public:
    Action decide(const VLNObservation& obs, const Instruction& instr) override;

private:
    std::size_t segment_ = 0;
    int intersections_seen_ = 0;
    int moves_since_anchor_ = 0;  // moves since the last turn (or the start)
    bool first_decision_ = true;
};

/// External policy bridged over the choose endpoint: options are the four
/// actions, context is a rendering of instruction + observation + history.
class ProviderVlnPolicy : public VlnPolicy {
public:
    explicit ProviderVlnPolicy(ChooseProvider& chooser) : chooser_(&chooser) {}
    Action decide(const VLNObservation& obs, const Instruction& instr) override;

private:
    ChooseProvider* chooser_;
    std::vector<std::string> history_;
};

/// Validate and emit the policy's action for one VLN step.
/// Throws InvalidAction if the policy produced garbage.
Action vln_step(const AgentState& s, const VLNObservation& obs, const Instruction& instr,
                VlnPolicy& policy);

// --- Intention navigation ---------------------------------------------------

struct RoadChoice {
    int road_index = -1;
    std::string rationale;
};

/**
 * Two-stage road selection at a crossroads: caption each candidate road view
 * from its visible entities, then ask the reasoner to pick the road that
 * best serves the intention. Provider answers outside [0, n) raise
 * IndexOutOfRange.
 */
RoadChoice intention_navigate_choose(const std::vector<SymbolicView>& road_views,
                                     ChooseProvider& reasoner, const World& w,
                                     const std::string& intention);

}  // namespace citywalk
