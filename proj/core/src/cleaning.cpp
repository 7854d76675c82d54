#include "citywalk/cleaning.hpp"

#include <algorithm>
#include <limits>

#include "citywalk/errors.hpp"

namespace citywalk {

CleaningResult clean_places(const World& w, const std::vector<Place>& places,
                            const CleaningConfig& cfg) {
    if (cfg.distance_threshold_m < 0.0 || cfg.image_score_threshold < 0.0 ||
        cfg.min_reviews < 0) {
        throw Error("cleaning thresholds must be non-negative");
    }
    CleaningResult res;
    for (const Place& p : places) {
        double min_dist = std::numeric_limits<double>::infinity();
        for (const auto& [id, n] : w.nodes()) {
            min_dist = std::min(min_dist, haversine_distance(p.coord, n.coord));
        }
        if (min_dist > cfg.distance_threshold_m) {
            res.log.push_back({p.id, "distance", ""});
            continue;
        }
        if (static_cast<int>(p.reviews.size()) < cfg.min_reviews) {
            res.log.push_back({p.id, "review", ""});
            continue;
        }
        Place kept = p;
        if (!p.photo_refs.empty()) {
            if (!cfg.scorer) throw ProviderError("image filter needs a photo scorer");
            kept.photo_refs.clear();
            for (const auto& ref : p.photo_refs) {
                if (cfg.scorer->score(ref, cfg.image_target_label) <
                    cfg.image_score_threshold) {
                    res.log.push_back({p.id, "image", ref});
                } else {
                    kept.photo_refs.push_back(ref);
                }
            }
        }
        res.kept.push_back(std::move(kept));
    }
    std::sort(res.kept.begin(), res.kept.end(),
              [](const Place& a, const Place& b) { return a.id < b.id; });
    return res;
}

CleaningResult clean_places(const World& w, const CleaningConfig& cfg) {
    std::vector<Place> places;
    places.reserve(w.places().size());
    for (const auto& [id, p] : w.places()) places.push_back(p);
    return clean_places(w, places, cfg);
}

}  // namespace citywalk
