#pragma once

#include <string>
#include <vector>

#include "citywalk/providers.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

struct CleaningConfig {
    double distance_threshold_m = 100.0;  // max distance from any street node
    int min_reviews = 1;                  // drop "zombie" places below this
    double image_score_threshold = 0.3;   // drop photos scoring below this
    std::string image_target_label = "storefront";
    PhotoScoreProvider* scorer = nullptr;  // required when places carry photos
};

struct Removal {
    std::string place_id;
    std::string rule;    // "distance" | "review" | "image"
    std::string detail;  // photo ref for image removals
};

struct CleaningResult {
    std::vector<Place> kept;      // sorted by id; photo lists already filtered
    std::vector<Removal> log;
};

/// Apply the three cleaning rules to an explicit place list (street nodes
/// come from the world). Place-level rules remove the place; the image rule
/// removes offending photo refs only. Idempotent on its own output.
CleaningResult clean_places(const World& w, const std::vector<Place>& places,
                            const CleaningConfig& cfg);

/// Convenience overload over the world's own place table.
CleaningResult clean_places(const World& w, const CleaningConfig& cfg);

}  // namespace citywalk
