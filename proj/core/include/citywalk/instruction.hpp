#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citywalk/routing.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

enum class Action { forward, turn_left, turn_right, stop };

std::string to_string(Action a);
Action action_from_string(const std::string& s);  // throws InvalidAction

enum class TriggerKind { at_intersection, at_landmark, at_destination };

enum class Side { left, right };

/**
 * What fires a segment. at_intersection carries the cumulative intersection
 * ordinal along the route (1-based); at_landmark carries the anchoring place,
 * its side relative to the walking direction, and the same ordinal (a turn
 * still happens at a specific corner). at_destination carries the move count
 * from the previous turn (or the start) and, when available, an anchoring
 * landmark that must also be in sight.
 */
struct Trigger {
    TriggerKind kind = TriggerKind::at_destination;
    int ordinal = 0;
    std::string place_id;
    std::string place_name;
    Side side = Side::left;
    int steps = 0;
};

struct Segment {
    Action action = Action::forward;
    Trigger trigger;
};

/// One segment per route key position; the last segment is always `stop`.
/// The verbalization is a deterministic rendering of the segments.
struct Instruction {
    std::vector<Segment> segments;
    std::string verbalization;

    /// Landmark names cited by any trigger (the perception vocabulary for VLN).
    std::vector<std::string> landmark_names() const;
};

/// Landmark search radius around a key position.
inline constexpr double kLandmarkRadiusM = 40.0;

/// Heading changes below this are verbalized as going straight.
inline constexpr double kTurnThresholdDeg = 30.0;

/// Build the direction program for a route. Turn triggers cite the nearest
/// reviewed place within kLandmarkRadiusM when one exists, else the
/// intersection ordinal. Deterministic in (route, seed).
Instruction generate_instruction(const World& w, const Route& route, std::uint64_t seed);

}  // namespace citywalk
