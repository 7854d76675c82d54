#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citywalk/geo.hpp"

namespace citywalk {

struct NeighborLink {
    std::string node_id;
    double heading = 0.0;   // degrees, bearing from this node to the neighbor
    double length = 0.0;    // meters

    bool operator==(const NeighborLink&) const = default;
};

/**
 * A street-graph node with a panorama. `neighbors` is the full set of
 * navigable links (grid mover view); `web_visible_neighbors` is the subset a
 * web panorama would expose (web mover view).
 */
struct StreetNode {
    std::string id;
    GeoCoordinate coord;
    std::vector<NeighborLink> neighbors;             // sorted by node_id
    std::vector<std::string> web_visible_neighbors;  // sorted, subset of neighbors

    bool operator==(const StreetNode&) const = default;
};

struct Review {
    std::string text;
    double rating = 0.0;  // [0, 5]

    bool operator==(const Review&) const = default;
};

struct Place {
    std::string id;
    std::string name;
    std::vector<std::string> types;  // non-empty, drawn from the world vocabulary
    GeoCoordinate coord;
    std::optional<double> rating;    // [0, 5]
    std::vector<Review> reviews;
    std::vector<std::string> photo_refs;  // opaque image references

    bool operator==(const Place&) const = default;
};

/// Ground-truth physical object (trash bin, fire hydrant, ...) used by the
/// detection/counting tasks.
struct ObjectInstance {
    std::string id;
    std::string category;
    GeoCoordinate coord;
    double height_m = 1.0;
    double width_m = 1.0;

    bool operator==(const ObjectInstance&) const = default;
};

struct WorldMeta {
    std::uint64_t seed = 0;
    std::vector<GeoCoordinate> bounds;  // generation area polygon, may be empty
    std::string params;                 // canonical JSON echo of generator params

    bool operator==(const WorldMeta&) const = default;
};

/**
 * The immutable environment: street graph, place database and ground-truth
 * object instances. All queries are read-only; a World can be shared freely.
 */
class World {
public:
    World(WorldMeta meta,
          std::map<std::string, StreetNode> nodes,
          std::map<std::string, Place> places,
          std::map<std::string, ObjectInstance> instances,
          std::vector<std::string> vocabulary);

    const WorldMeta& meta() const { return meta_; }
    const std::map<std::string, StreetNode>& nodes() const { return nodes_; }
    const std::map<std::string, Place>& places() const { return places_; }
    const std::map<std::string, ObjectInstance>& instances() const { return instances_; }
    const std::vector<std::string>& vocabulary() const { return vocabulary_; }

    const StreetNode& node(const std::string& id) const;      // throws UnknownNode
    const Place& place(const std::string& id) const;          // throws UnknownPlace
    bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }

private:
    WorldMeta meta_;
    std::map<std::string, StreetNode> nodes_;
    std::map<std::string, Place> places_;
    std::map<std::string, ObjectInstance> instances_;
    std::vector<std::string> vocabulary_;
};

/// Default search radius for relocate(), meters.
inline constexpr double kDefaultRelocateRadiusM = 50.0;

/// Parse and validate a world file. Throws SchemaError (with field path),
/// DanglingReference or AsymmetricEdge.
World load_world(const std::string& document);

/// Canonical serialization; load_world(save_world(w)) reproduces w and
/// save(load(d)) is byte-identical for canonical documents d.
std::string save_world(const World& w);

/// Structural validation shared by load_world and the generator.
/// Throws the same errors as load_world.
void validate_world(const World& w);

/// Snap an arbitrary coordinate to the nearest street node within `radius_m`.
/// Distance ties break to the lexicographically smallest id.
/// Throws NoStreetView when no node qualifies.
const StreetNode& relocate(const World& w, const GeoCoordinate& p,
                           double radius_m = kDefaultRelocateRadiusM);

/// Places within `radius_m` of p, sorted by (distance, id). When
/// `type_filter` is given, only places sharing at least one listed type.
std::vector<std::pair<const Place*, double>> nearby_places(
    const World& w, const GeoCoordinate& p, double radius_m,
    const std::vector<std::string>& type_filter = {});

/// Full place record. Throws UnknownPlace.
const Place& place_details(const World& w, const std::string& id);

}  // namespace citywalk
