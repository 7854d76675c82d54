#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citywalk/canonical_json.hpp"
#include "citywalk/eval.hpp"
#include "citywalk/instruction.hpp"
#include "citywalk/routing.hpp"
#include "citywalk/vln_eval.hpp"

namespace citywalk {

struct SuiteParams {
    int n_routes = 18;
    int n_regions = 9;
    double route_min_length_m = 60.0;
    double route_max_length_m = 400.0;
    int n_vqa_items = 40;
};

struct RegionSpec {
    std::string id;
    std::vector<GeoCoordinate> polygon;
};

GeoPolygon region_polygon(const RegionSpec& r);

struct SuiteRoute {
    std::string region_id;
    Route route;
    Instruction instruction;
};

/// A generated benchmark suite: polygonal regions, routes with instructions
/// (assigned round-robin over regions) and VQA items.
struct BenchmarkSuite {
    std::uint64_t seed = 0;
    std::vector<RegionSpec> regions;
    std::vector<SuiteRoute> routes;
    std::vector<VQAItem> vqa_items;
    std::vector<std::string> vqa_regions;  // parallel to vqa_items, for reports
};

/**
 * Deterministic suite construction. Routes are assigned to regions
 * round-robin (18 routes over 9 regions leaves 2 per region); every route is
 * verified solvable by an oracle-perception scripted episode before it is
 * accepted. Throws InfeasibleParams when the world cannot host the request.
 */
BenchmarkSuite generate_benchmark_suite(const World& w, std::uint64_t seed,
                                        const SuiteParams& params);

Json suite_to_json(const BenchmarkSuite& s);
BenchmarkSuite suite_from_json(const Json& j);

/// Canonical-serialization fingerprint, for determinism checks.
std::uint64_t suite_fingerprint(const BenchmarkSuite& s);

/// Ground-truth places inside a region.
std::vector<Place> places_in_region(const World& w, const GeoPolygon& region);

class DetectProvider;
class MatchProvider;

/**
 * Detection protocol over one region: visit every in-region node, look
 * around (eight headings, 90-degree FOV), run the detector for the tested
 * categories and frustum-match every proposal.
 */
std::vector<MatchResult> detection_sweep(const World& w, const GeoPolygon& region,
                                         const std::vector<std::string>& categories,
                                         DetectProvider& detector,
                                         double frustum_radius_m = kDefaultFrustumRadiusM,
                                         double visibility_range_m = kDefaultVisibilityRangeM);

struct CountReport {
    std::map<std::string, int> per_category;
    int total_groups = 0;
};

/// Region sweep that counts unique object instances: traverse the region
/// plan, detect instance categories, deduplicate across viewpoints.
CountReport counting_sweep(const World& w, const GeoPolygon& region,
                           const std::vector<std::string>& categories,
                           DetectProvider& detector, MatchProvider& matcher,
                           double visibility_range_m = kDefaultVisibilityRangeM);

}  // namespace citywalk
