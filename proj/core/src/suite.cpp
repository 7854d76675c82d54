#include "citywalk/suite.hpp"

#include <algorithm>
#include <cmath>

#include "citywalk/errors.hpp"
#include "citywalk/perception.hpp"
#include "citywalk/providers.hpp"
#include "citywalk/rng.hpp"
#include "citywalk/serialization.hpp"
#include "citywalk/worldgen.hpp"

namespace citywalk {

GeoPolygon region_polygon(const RegionSpec& r) { return GeoPolygon(r.polygon); }

namespace {

std::string indexed_id(const char* prefix, int i) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%s%03d", prefix, i);
    return buf;
}

std::vector<std::string> nodes_in_polygon(const World& w, const GeoPolygon& poly) {
    std::vector<std::string> out;
    for (const auto& [id, n] : w.nodes()) {
        if (point_in_polygon(n.coord, poly)) out.push_back(id);
    }
    return out;
}

// Friendlier option strings for VQA: vocabulary entries with spaces.
std::string humanize_type(const std::string& type) {
    std::string out = type;
    std::replace(out.begin(), out.end(), '_', ' ');
    return out;
}

}  // namespace

std::vector<Place> places_in_region(const World& w, const GeoPolygon& region) {
    std::vector<Place> out;
    for (const auto& [id, p] : w.places()) {
        if (point_in_polygon(p.coord, region)) out.push_back(p);
    }
    return out;
}

BenchmarkSuite generate_benchmark_suite(const World& w, std::uint64_t seed,
                                        const SuiteParams& params) {
    if (params.n_routes < 0 || params.n_regions < 1 || params.n_vqa_items < 0) {
        throw InfeasibleParams("suite params must be non-negative with >= 1 region");
    }
    if (w.nodes().empty()) throw InfeasibleParams("world has no street nodes");

    BenchmarkSuite suite;
    suite.seed = seed;
    SeededRng rng(hash_combine(seed, stable_hash("suite")));

    // Carve candidate region rectangles from the node cloud's bounding box
    // and keep the ones that actually contain street nodes.
    {
        double min_lat = 90.0, max_lat = -90.0, min_lng = 180.0, max_lng = -180.0;
        for (const auto& [id, n] : w.nodes()) {
            min_lat = std::min(min_lat, n.coord.lat);
            max_lat = std::max(max_lat, n.coord.lat);
            min_lng = std::min(min_lng, n.coord.lng);
            max_lng = std::max(max_lng, n.coord.lng);
        }
        // Pad so boundary nodes do not sit exactly on region edges.
        const double pad_lat = (max_lat - min_lat) * 0.02 + 1e-6;
        const double pad_lng = (max_lng - min_lng) * 0.02 + 1e-6;
        min_lat -= pad_lat;
        max_lat += pad_lat;
        min_lng -= pad_lng;
        max_lng += pad_lng;

        const int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(
                                          static_cast<double>(params.n_regions)))));
        const int cols = (params.n_regions + rows - 1) / rows;
        const double dlat = (max_lat - min_lat) / rows;
        const double dlng = (max_lng - min_lng) / cols;
        for (int r = 0; r < rows && static_cast<int>(suite.regions.size()) < params.n_regions;
             ++r) {
            for (int c = 0;
                 c < cols && static_cast<int>(suite.regions.size()) < params.n_regions; ++c) {
                RegionSpec region;
                region.id = indexed_id("g", static_cast<int>(suite.regions.size()));
                region.polygon = {GeoCoordinate(min_lat + r * dlat, min_lng + c * dlng),
                                  GeoCoordinate(min_lat + r * dlat, min_lng + (c + 1) * dlng),
                                  GeoCoordinate(min_lat + (r + 1) * dlat,
                                                min_lng + (c + 1) * dlng),
                                  GeoCoordinate(min_lat + (r + 1) * dlat, min_lng + c * dlng)};
                if (nodes_in_polygon(w, region_polygon(region)).empty()) continue;
                suite.regions.push_back(std::move(region));
            }
        }
        if (static_cast<int>(suite.regions.size()) < params.n_regions) {
            throw InfeasibleParams("world does not split into the requested region count");
        }
    }

    // Routes, round-robin over regions, each verified solvable by an oracle
    // episode before acceptance.
    OracleDetector oracle(w);
    for (int i = 0; i < params.n_routes; ++i) {
        const RegionSpec& region = suite.regions[i % suite.regions.size()];
        const auto region_nodes = nodes_in_polygon(w, region_polygon(region));
        bool accepted = false;
        for (int attempt = 0; attempt < 400 && !accepted; ++attempt) {
            const std::string& start = region_nodes[rng.uniform_int(region_nodes.size())];
            const auto dist = shortest_path_lengths(w, start);
            std::vector<std::string> goals;
            for (const auto& [id, d] : dist) {
                if (d >= params.route_min_length_m && d <= params.route_max_length_m) {
                    goals.push_back(id);
                }
            }
            if (goals.empty()) continue;
            const std::string& goal = goals[rng.uniform_int(goals.size())];

            SuiteRoute sr;
            sr.region_id = region.id;
            sr.route = plan_route(w, start, goal);
            sr.route.id = indexed_id("route", i);
            sr.instruction = generate_instruction(
                w, sr.route, hash_combine(seed, stable_hash(sr.route.id)));

            // Pipeline self-check: the oracle episode must not just succeed
            // but hit every key position with the scripted action.
            ScriptedVlnPolicy policy;
            const auto rec = run_vln_episode(w, sr.route, sr.instruction, oracle, policy);
            const bool perfect = rec.success && rec.start.correct == 1 &&
                                 rec.intersection.reached == rec.intersection.total &&
                                 rec.intersection.correct == rec.intersection.total &&
                                 rec.stop.reached == 1 && rec.stop.correct == 1;
            if (!perfect) continue;
            suite.routes.push_back(std::move(sr));
            accepted = true;
        }
        if (!accepted) {
            throw InfeasibleParams("no solvable route found for region " + region.id);
        }
    }

    // VQA items from place ground truth; distractor types sampled from the
    // vocabulary excluding the true type, truth position uniform.
    {
        std::vector<const Place*> pool;
        for (const auto& [id, p] : w.places()) pool.push_back(&p);
        if (params.n_vqa_items > 0 && pool.empty()) {
            throw InfeasibleParams("world has no places for VQA items");
        }
        const auto& vocab = w.vocabulary();
        if (params.n_vqa_items > 0 && vocab.size() < 4) {
            throw InfeasibleParams("vocabulary too small for four options");
        }
        std::vector<GeoPolygon> region_polys;
        for (const auto& r : suite.regions) region_polys.push_back(region_polygon(r));
        for (int i = 0; i < params.n_vqa_items; ++i) {
            const Place& p = *pool[rng.uniform_int(pool.size())];
            std::string region_tag = "all";
            for (size_t g = 0; g < region_polys.size(); ++g) {
                if (point_in_polygon(p.coord, region_polys[g])) {
                    region_tag = suite.regions[g].id;
                    break;
                }
            }
            suite.vqa_regions.push_back(region_tag);
            VQAItem item;
            item.image_ref = p.photo_refs.empty() ? "sym_" + p.id : p.photo_refs.front();
            item.question = "Which type of place is " + p.name + "?";
            const std::string& truth = p.types.front();
            std::vector<std::string> distractors;
            while (distractors.size() < 3) {
                const std::string& t = vocab[rng.uniform_int(vocab.size())];
                if (t == truth) continue;
                if (std::find(distractors.begin(), distractors.end(), t) !=
                    distractors.end()) {
                    continue;
                }
                distractors.push_back(t);
            }
            item.answer_index = static_cast<int>(rng.uniform_int(4));
            int d = 0;
            for (int k = 0; k < 4; ++k) {
                item.options[k] = humanize_type(k == item.answer_index ? truth
                                                                       : distractors[d++]);
            }
            suite.vqa_items.push_back(std::move(item));
        }
    }
    return suite;
}

Json suite_to_json(const BenchmarkSuite& s) {
    Json regions = Json::array();
    for (const auto& r : s.regions) {
        Json poly = Json::array();
        for (const auto& v : r.polygon) poly.push_back(Json::array({v.lat, v.lng}));
        regions.push_back(Json{{"id", r.id}, {"polygon", std::move(poly)}});
    }
    Json routes = Json::array();
    for (const auto& sr : s.routes) {
        routes.push_back(Json{{"region", sr.region_id},
                              {"route", route_to_json(sr.route)},
                              {"instruction", instruction_to_json(sr.instruction)}});
    }
    Json vqa = Json::array();
    for (size_t i = 0; i < s.vqa_items.size(); ++i) {
        const auto& item = s.vqa_items[i];
        vqa.push_back(Json{{"image", item.image_ref},
                           {"question", item.question},
                           {"options", item.options},
                           {"answer", item.answer_index},
                           {"region", i < s.vqa_regions.size() ? s.vqa_regions[i] : "all"}});
    }
    return Json{{"seed", s.seed},
                {"regions", std::move(regions)},
                {"routes", std::move(routes)},
                {"vqa", std::move(vqa)}};
}

BenchmarkSuite suite_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("suite", "expected object");
    BenchmarkSuite s;
    s.seed = j.value("seed", 0ULL);
    if (!j.contains("regions") || !j["regions"].is_array()) {
        throw SchemaError("suite.regions", "expected array");
    }
    for (const auto& r : j["regions"]) {
        RegionSpec spec;
        spec.id = r.at("id").get<std::string>();
        for (const auto& v : r.at("polygon")) {
            spec.polygon.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        }
        s.regions.push_back(std::move(spec));
    }
    if (!j.contains("routes") || !j["routes"].is_array()) {
        throw SchemaError("suite.routes", "expected array");
    }
    for (size_t i = 0; i < j["routes"].size(); ++i) {
        const auto& r = j["routes"][i];
        SuiteRoute sr;
        const std::string path = "suite.routes[" + std::to_string(i) + "]";
        sr.region_id = r.at("region").get<std::string>();
        sr.route = route_from_json(r.at("route"), path + ".route");
        sr.instruction = instruction_from_json(r.at("instruction"), path + ".instruction");
        s.routes.push_back(std::move(sr));
    }
    if (j.contains("vqa")) {
        for (const auto& v : j["vqa"]) {
            VQAItem item;
            item.image_ref = v.at("image").get<std::string>();
            item.question = v.at("question").get<std::string>();
            const auto& opts = v.at("options");
            if (!opts.is_array() || opts.size() != 4) {
                throw SchemaError("suite.vqa.options", "expected exactly 4 options");
            }
            for (int k = 0; k < 4; ++k) item.options[k] = opts[k].get<std::string>();
            item.answer_index = v.at("answer").get<int>();
            if (item.answer_index < 0 || item.answer_index > 3) {
                throw SchemaError("suite.vqa.answer", "answer index out of range");
            }
            s.vqa_regions.push_back(v.value("region", std::string("all")));
            s.vqa_items.push_back(std::move(item));
        }
    }
    return s;
}

std::uint64_t suite_fingerprint(const BenchmarkSuite& s) {
    return stable_hash(canonical_dump(suite_to_json(s)));
}

std::vector<MatchResult> detection_sweep(const World& w, const GeoPolygon& region,
                                         const std::vector<std::string>& categories,
                                         DetectProvider& detector, double frustum_radius_m,
                                         double visibility_range_m) {
    std::vector<MatchResult> results;
    std::vector<Pose> poses;
    for (int h = 0; h < 360; h += 45) {
        poses.emplace_back(static_cast<double>(h), 0.0, 90.0);
    }
    for (const std::string& node_id : nodes_in_polygon(w, region)) {
        for (const auto& view : render_views(w, node_id, poses, visibility_range_m)) {
            for (const auto& proposal : detector.detect(view, categories)) {
                results.push_back(match_proposal_to_place(w, proposal, frustum_radius_m));
            }
        }
    }
    return results;
}

CountReport counting_sweep(const World& w, const GeoPolygon& region,
                           const std::vector<std::string>& categories,
                           DetectProvider& detector, MatchProvider& matcher,
                           double visibility_range_m) {
    std::vector<DetectionRecord> detections;
    std::vector<Pose> poses;
    for (int h = 0; h < 360; h += 45) {
        poses.emplace_back(static_cast<double>(h), 0.0, 90.0);
    }
    for (const std::string& node_id : region_navigate_plan(w, region)) {
        for (const auto& view : render_views(w, node_id, poses, visibility_range_m)) {
            for (auto& proposal : detector.detect(view, categories)) {
                detections.push_back({std::move(proposal), node_id});
            }
        }
    }
    CountReport report;
    for (const auto& group : deduplicate(detections, matcher)) {
        ++report.per_category[group.representative.proposal.label];
        ++report.total_groups;
    }
    return report;
}

}  // namespace citywalk
