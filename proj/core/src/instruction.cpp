#include "citywalk/instruction.hpp"

#include <algorithm>
#include <cmath>

#include "citywalk/errors.hpp"
#include "citywalk/rng.hpp"

namespace citywalk {

std::string to_string(Action a) {
    switch (a) {
        case Action::forward: return "forward";
        case Action::turn_left: return "turn_left";
        case Action::turn_right: return "turn_right";
        case Action::stop: return "stop";
    }
    return "?";
}

Action action_from_string(const std::string& s) {
    if (s == "forward") return Action::forward;
    if (s == "turn_left") return Action::turn_left;
    if (s == "turn_right") return Action::turn_right;
    if (s == "stop") return Action::stop;
    throw InvalidAction("not in the action vocabulary: " + s);
}

std::vector<std::string> Instruction::landmark_names() const {
    std::vector<std::string> names;
    for (const auto& seg : segments) {
        if (!seg.trigger.place_name.empty()) names.push_back(seg.trigger.place_name);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

namespace {

const char* compass_word(double heading) {
    static const char* kNames[] = {"north", "northeast", "east", "southeast",
                                   "south", "southwest", "west", "northwest"};
    const int idx = static_cast<int>(std::floor(normalize_heading(heading + 22.5) / 45.0)) % 8;
    return kNames[idx];
}

// Nearest place within the landmark radius that has at least one review.
const Place* pick_landmark(const World& w, const GeoCoordinate& at) {
    for (const auto& [place, dist] : nearby_places(w, at, kLandmarkRadiusM)) {
        if (!place->reviews.empty()) return place;
    }
    return nullptr;
}

}  // namespace

Instruction generate_instruction(const World& w, const Route& route, std::uint64_t seed) {
    const auto& keys = route.key_positions;
    if (keys.size() < 2) throw Error("route must have start and stop key positions");

    SeededRng rng(hash_combine(seed, stable_hash("instruction")));

    // Incoming/outgoing headings at each key position, from the legs.
    const size_t m = keys.size() - 1;  // index of the stop key
    auto leg_first_heading = [&](const RouteLeg& leg) {
        return initial_bearing(w.node(leg.nodes[0]).coord, w.node(leg.nodes[1]).coord);
    };
    auto leg_last_heading = [&](const RouteLeg& leg) {
        const size_t k = leg.nodes.size();
        return initial_bearing(w.node(leg.nodes[k - 2]).coord, w.node(leg.nodes[k - 1]).coord);
    };

    Instruction instr;
    instr.segments.resize(keys.size());

    for (size_t i = 1; i < m; ++i) {
        const GeoCoordinate& at = w.node(keys[i].node_id).coord;
        Segment& seg = instr.segments[i];
        const bool has_geometry = route.legs[i - 1].nodes.size() >= 2 &&
                                  route.legs[i].nodes.size() >= 2;
        double offset = 0.0;
        double in_heading = 0.0;
        if (has_geometry) {
            in_heading = leg_last_heading(route.legs[i - 1]);
            offset = angular_offset(in_heading, leg_first_heading(route.legs[i]));
        }
        if (offset >= kTurnThresholdDeg) {
            seg.action = Action::turn_right;
        } else if (offset <= -kTurnThresholdDeg) {
            seg.action = Action::turn_left;
        } else {
            seg.action = Action::forward;
        }
        seg.trigger.ordinal = static_cast<int>(i);
        if (seg.action != Action::forward) {
            if (const Place* lm = pick_landmark(w, at)) {
                seg.trigger.kind = TriggerKind::at_landmark;
                seg.trigger.place_id = lm->id;
                seg.trigger.place_name = lm->name;
                const double to_place = initial_bearing(at, lm->coord);
                seg.trigger.side =
                    angular_offset(in_heading, to_place) >= 0.0 ? Side::right : Side::left;
                continue;
            }
        }
        seg.trigger.kind = TriggerKind::at_intersection;
    }

    {
        // Destination trigger: moves from the last turn (or the start), plus
        // the nearest reviewed place as a visual anchor when one exists.
        Segment& seg = instr.segments[m];
        seg.action = Action::stop;
        seg.trigger.kind = TriggerKind::at_destination;
        int moves = 0;
        for (size_t k = m; k >= 1; --k) {
            moves += static_cast<int>(route.legs[k - 1].nodes.size()) - 1;
            const Action prev = instr.segments[k - 1].action;
            if (prev == Action::turn_left || prev == Action::turn_right) break;
            if (k == 1) break;
        }
        seg.trigger.steps = moves;
        if (const Place* lm = pick_landmark(w, w.node(keys[m].node_id).coord)) {
            seg.trigger.place_id = lm->id;
            seg.trigger.place_name = lm->name;
        }
    }

    // The start segment walks forward until the first event fires.
    instr.segments[0].action = Action::forward;
    instr.segments[0].trigger = instr.segments[1].trigger;

    // Verbalization: deterministic template rendering with seeded synonyms.
    static const char* kGoWords[] = {"Head", "Walk", "Go"};
    std::string text = std::string(kGoWords[rng.uniform_int(3)]) + " ";
    if (route.legs[0].nodes.size() >= 2) {
        text += compass_word(leg_first_heading(route.legs[0]));
    } else {
        text += "along the street";
    }
    text += ".";
    for (size_t i = 1; i < keys.size(); ++i) {
        const Segment& seg = instr.segments[i];
        text += " ";
        if (i == m) {
            if (!seg.trigger.place_name.empty()) {
                text += "Your destination is by " + seg.trigger.place_name + ".";
            } else if (seg.trigger.steps > 0) {
                text += "Your destination is " + std::to_string(seg.trigger.steps) +
                        (seg.trigger.steps == 1 ? " step" : " steps") + " ahead.";
            } else {
                text += "You are already at your destination.";
            }
            text += " Stop there.";
            continue;
        }
        switch (seg.action) {
            case Action::forward:
                text += "Continue straight through intersection " +
                        std::to_string(seg.trigger.ordinal) + ".";
                break;
            case Action::turn_left:
            case Action::turn_right: {
                const std::string dir = seg.action == Action::turn_left ? "left" : "right";
                if (seg.trigger.kind == TriggerKind::at_landmark) {
                    text += "Turn " + dir + " at " + seg.trigger.place_name + " (on your " +
                            (seg.trigger.side == Side::right ? "right" : "left") + ").";
                } else {
                    text += "Turn " + dir + " at intersection " +
                            std::to_string(seg.trigger.ordinal) + ".";
                }
                break;
            }
            case Action::stop:
                break;
        }
    }
    instr.verbalization = std::move(text);
    return instr;
}

}  // namespace citywalk
