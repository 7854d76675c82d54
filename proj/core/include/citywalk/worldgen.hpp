#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "citywalk/canonical_json.hpp"
#include "citywalk/geo.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

/// The place-type vocabulary the generator uses by default (96 entries).
const std::vector<std::string>& default_place_type_vocabulary();

/// Object categories the generator scatters along streets.
const std::vector<std::string>& default_instance_categories();

struct GeneratorParams {
    int node_count = 100;
    GeoPolygon area;
    double place_density = 0.4;        // places per street node
    double instance_density = 0.25;    // object instances per street node
    double web_visibility_fraction = 0.85;
    std::map<std::string, double> language_mix = {{"en", 1.0}};
    double node_spacing_m = 12.0;      // grid pitch; keeps relocate(50m) on-network
    double edge_keep_probability = 0.85;  // extra edges beyond the spanning tree
    bool require_connected = true;
    std::vector<std::string> vocabulary;  // empty -> default 96-type vocabulary

    explicit GeneratorParams(GeoPolygon a) : area(std::move(a)) {}
};

/// Square generation area centered on `center`, sized so that `node_count`
/// nodes fit comfortably at the given spacing.
GeoPolygon make_square_area(const GeoCoordinate& center, int node_count,
                            double node_spacing_m = 12.0);

/**
 * Deterministic synthetic world: jittered grid street graph pruned to a
 * connected skeleton plus random extra edges, with places and object
 * instances scattered along the streets. Identical (seed, params) pairs
 * produce byte-identical canonical world files.
 */
World generate_world(std::uint64_t seed, const GeneratorParams& params);

Json generator_params_to_json(const GeneratorParams& p);

}  // namespace citywalk
