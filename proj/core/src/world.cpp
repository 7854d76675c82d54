#include "citywalk/world.hpp"

#include <algorithm>
#include <cmath>

#include "citywalk/canonical_json.hpp"
#include "citywalk/errors.hpp"

namespace citywalk {

World::World(WorldMeta meta,
             std::map<std::string, StreetNode> nodes,
             std::map<std::string, Place> places,
             std::map<std::string, ObjectInstance> instances,
             std::vector<std::string> vocabulary)
    : meta_(std::move(meta)),
      nodes_(std::move(nodes)),
      places_(std::move(places)),
      instances_(std::move(instances)),
      vocabulary_(std::move(vocabulary)) {}

const StreetNode& World::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode("unknown node: " + id);
    return it->second;
}

const Place& World::place(const std::string& id) const {
    auto it = places_.find(id);
    if (it == places_.end()) throw UnknownPlace("unknown place: " + id);
    return it->second;
}

namespace {

const Json& require(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected number");
    return j.get<double>();
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected string");
    return j.get<std::string>();
}

GeoCoordinate as_coord(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw SchemaError(path, "expected [lat, lng] pair");
    }
    try {
        return GeoCoordinate(as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
}

Json coord_to_json(const GeoCoordinate& c) {
    return Json::array({c.lat, c.lng});
}

}  // namespace

World load_world(const std::string& document) {
    Json j;
    try {
        j = Json::parse(document);
    } catch (const Json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("$", "expected top-level object");

    WorldMeta meta;
    {
        const Json& m = require(j, "meta", "$");
        const Json& seed = require(m, "seed", "meta");
        if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
            throw SchemaError("meta.seed", "expected integer");
        }
        meta.seed = seed.get<std::uint64_t>();
        if (m.contains("bounds")) {
            const Json& b = m["bounds"];
            if (!b.is_array()) throw SchemaError("meta.bounds", "expected array");
            for (size_t i = 0; i < b.size(); ++i) {
                meta.bounds.push_back(as_coord(b[i], "meta.bounds[" + std::to_string(i) + "]"));
            }
        }
        if (m.contains("params")) {
            meta.params = as_string(m["params"], "meta.params");
        }
    }

    std::vector<std::string> vocabulary;
    {
        const Json& v = require(j, "vocabulary", "$");
        if (!v.is_array()) throw SchemaError("vocabulary", "expected array");
        for (size_t i = 0; i < v.size(); ++i) {
            vocabulary.push_back(as_string(v[i], "vocabulary[" + std::to_string(i) + "]"));
        }
    }

    std::map<std::string, StreetNode> nodes;
    {
        const Json& ns = require(j, "nodes", "$");
        if (!ns.is_object()) throw SchemaError("nodes", "expected object");
        for (auto it = ns.begin(); it != ns.end(); ++it) {
            const std::string path = "nodes." + it.key();
            StreetNode n;
            n.id = it.key();
            if (n.id.empty()) throw SchemaError(path, "empty node id");
            n.coord = as_coord(require(*it, "coord", path), path + ".coord");
            const Json& nb = require(*it, "neighbors", path);
            if (!nb.is_array()) throw SchemaError(path + ".neighbors", "expected array");
            for (size_t i = 0; i < nb.size(); ++i) {
                const std::string npath = path + ".neighbors[" + std::to_string(i) + "]";
                NeighborLink link;
                link.node_id = as_string(require(nb[i], "id", npath), npath + ".id");
                link.heading = as_number(require(nb[i], "heading", npath), npath + ".heading");
                link.length = as_number(require(nb[i], "length", npath), npath + ".length");
                if (link.length < 0.0) throw SchemaError(npath + ".length", "negative length");
                n.neighbors.push_back(std::move(link));
            }
            const Json& wv = require(*it, "web_visible", path);
            if (!wv.is_array()) throw SchemaError(path + ".web_visible", "expected array");
            for (size_t i = 0; i < wv.size(); ++i) {
                n.web_visible_neighbors.push_back(
                    as_string(wv[i], path + ".web_visible[" + std::to_string(i) + "]"));
            }
            std::sort(n.neighbors.begin(), n.neighbors.end(),
                      [](const NeighborLink& a, const NeighborLink& b) {
                          return a.node_id < b.node_id;
                      });
            std::sort(n.web_visible_neighbors.begin(), n.web_visible_neighbors.end());
            nodes.emplace(n.id, std::move(n));
        }
    }

    std::map<std::string, Place> places;
    {
        const Json& ps = require(j, "places", "$");
        if (!ps.is_object()) throw SchemaError("places", "expected object");
        for (auto it = ps.begin(); it != ps.end(); ++it) {
            const std::string path = "places." + it.key();
            Place p;
            p.id = it.key();
            p.name = as_string(require(*it, "name", path), path + ".name");
            p.coord = as_coord(require(*it, "coord", path), path + ".coord");
            const Json& ts = require(*it, "types", path);
            if (!ts.is_array()) throw SchemaError(path + ".types", "expected array");
            for (size_t i = 0; i < ts.size(); ++i) {
                p.types.push_back(as_string(ts[i], path + ".types[" + std::to_string(i) + "]"));
            }
            if (it->contains("rating")) {
                const double r = as_number((*it)["rating"], path + ".rating");
                if (r < 0.0 || r > 5.0) throw SchemaError(path + ".rating", "rating outside [0, 5]");
                p.rating = r;
            }
            const Json& rs = require(*it, "reviews", path);
            if (!rs.is_array()) throw SchemaError(path + ".reviews", "expected array");
            for (size_t i = 0; i < rs.size(); ++i) {
                const std::string rpath = path + ".reviews[" + std::to_string(i) + "]";
                Review rev;
                rev.text = as_string(require(rs[i], "text", rpath), rpath + ".text");
                rev.rating = as_number(require(rs[i], "rating", rpath), rpath + ".rating");
                if (rev.rating < 0.0 || rev.rating > 5.0) {
                    throw SchemaError(rpath + ".rating", "rating outside [0, 5]");
                }
                p.reviews.push_back(std::move(rev));
            }
            const Json& ph = require(*it, "photos", path);
            if (!ph.is_array()) throw SchemaError(path + ".photos", "expected array");
            for (size_t i = 0; i < ph.size(); ++i) {
                p.photo_refs.push_back(as_string(ph[i], path + ".photos[" + std::to_string(i) + "]"));
            }
            places.emplace(p.id, std::move(p));
        }
    }

    std::map<std::string, ObjectInstance> instances;
    {
        const Json& os = require(j, "instances", "$");
        if (!os.is_object()) throw SchemaError("instances", "expected object");
        for (auto it = os.begin(); it != os.end(); ++it) {
            const std::string path = "instances." + it.key();
            ObjectInstance o;
            o.id = it.key();
            o.category = as_string(require(*it, "category", path), path + ".category");
            o.coord = as_coord(require(*it, "coord", path), path + ".coord");
            o.height_m = as_number(require(*it, "height", path), path + ".height");
            o.width_m = as_number(require(*it, "width", path), path + ".width");
            if (o.height_m <= 0.0) throw SchemaError(path + ".height", "extent must be positive");
            if (o.width_m <= 0.0) throw SchemaError(path + ".width", "extent must be positive");
            instances.emplace(o.id, std::move(o));
        }
    }

    World w(std::move(meta), std::move(nodes), std::move(places), std::move(instances),
            std::move(vocabulary));
    validate_world(w);
    return w;
}

void validate_world(const World& w) {
    for (const auto& [id, n] : w.nodes()) {
        const std::string path = "nodes." + id;
        for (size_t i = 0; i < n.neighbors.size(); ++i) {
            const auto& link = n.neighbors[i];
            const std::string npath = path + ".neighbors[" + std::to_string(i) + "]";
            if (link.node_id == id) throw SchemaError(npath + ".id", "self-loop");
            auto other = w.nodes().find(link.node_id);
            if (other == w.nodes().end()) {
                throw DanglingReference(npath + ".id: no such node " + link.node_id);
            }
            // Reciprocal edge must exist with heading flipped by ~180.
            const auto& back = other->second.neighbors;
            auto rit = std::find_if(back.begin(), back.end(), [&](const NeighborLink& l) {
                return l.node_id == id;
            });
            if (rit == back.end()) {
                throw AsymmetricEdge("edge " + id + "->" + link.node_id + " has no reciprocal");
            }
            const double want = normalize_heading(link.heading + 180.0);
            if (std::fabs(angular_offset(want, rit->heading)) > 1.0) {
                throw AsymmetricEdge("edge " + id + "->" + link.node_id +
                                     " reciprocal heading differs by more than 1 degree");
            }
            // Stored heading must match the geometry.
            const double bearing = initial_bearing(n.coord, other->second.coord);
            if (std::fabs(angular_offset(bearing, link.heading)) > 1.0) {
                throw SchemaError(npath + ".heading",
                                  "differs from node-to-neighbor bearing by more than 1 degree");
            }
        }
        for (const auto& web_id : n.web_visible_neighbors) {
            const bool known = std::any_of(
                n.neighbors.begin(), n.neighbors.end(),
                [&](const NeighborLink& l) { return l.node_id == web_id; });
            if (!known) {
                throw SchemaError(path + ".web_visible",
                                  "id " + web_id + " is not a neighbor");
            }
        }
    }
    for (const auto& [id, p] : w.places()) {
        const std::string path = "places." + id;
        if (p.types.empty()) throw SchemaError(path + ".types", "must be non-empty");
        for (const auto& t : p.types) {
            if (std::find(w.vocabulary().begin(), w.vocabulary().end(), t) ==
                w.vocabulary().end()) {
                throw SchemaError(path + ".types", "type not in vocabulary: " + t);
            }
        }
    }
}

std::string save_world(const World& w) {
    Json j;
    Json meta = Json::object();
    meta["seed"] = w.meta().seed;
    if (!w.meta().bounds.empty()) {
        Json b = Json::array();
        for (const auto& c : w.meta().bounds) b.push_back(coord_to_json(c));
        meta["bounds"] = std::move(b);
    }
    if (!w.meta().params.empty()) meta["params"] = w.meta().params;
    j["meta"] = std::move(meta);

    j["vocabulary"] = w.vocabulary();

    Json nodes = Json::object();
    for (const auto& [id, n] : w.nodes()) {
        Json jn;
        jn["coord"] = coord_to_json(n.coord);
        Json nb = Json::array();
        for (const auto& l : n.neighbors) {
            nb.push_back(Json{{"id", l.node_id}, {"heading", l.heading}, {"length", l.length}});
        }
        jn["neighbors"] = std::move(nb);
        jn["web_visible"] = n.web_visible_neighbors;
        nodes[id] = std::move(jn);
    }
    j["nodes"] = std::move(nodes);

    Json places = Json::object();
    for (const auto& [id, p] : w.places()) {
        Json jp;
        jp["name"] = p.name;
        jp["types"] = p.types;
        jp["coord"] = coord_to_json(p.coord);
        if (p.rating) jp["rating"] = *p.rating;
        Json rs = Json::array();
        for (const auto& r : p.reviews) {
            rs.push_back(Json{{"text", r.text}, {"rating", r.rating}});
        }
        jp["reviews"] = std::move(rs);
        jp["photos"] = p.photo_refs;
        places[id] = std::move(jp);
    }
    j["places"] = std::move(places);

    Json instances = Json::object();
    for (const auto& [id, o] : w.instances()) {
        instances[id] = Json{{"category", o.category},
                             {"coord", coord_to_json(o.coord)},
                             {"height", o.height_m},
                             {"width", o.width_m}};
    }
    j["instances"] = std::move(instances);

    return canonical_dump(j) + "\n";
}

const StreetNode& relocate(const World& w, const GeoCoordinate& p, double radius_m) {
    if (radius_m <= 0.0) throw std::invalid_argument("relocate radius must be positive");
    const StreetNode* best = nullptr;
    double best_dist = 0.0;
    for (const auto& [id, n] : w.nodes()) {
        const double d = haversine_distance(p, n.coord);
        if (d > radius_m) continue;
        if (!best || d < best_dist) {  // map order breaks ties to smallest id
            best = &n;
            best_dist = d;
        }
    }
    if (!best) throw NoStreetView("no street node within radius");
    return *best;
}

std::vector<std::pair<const Place*, double>> nearby_places(
    const World& w, const GeoCoordinate& p, double radius_m,
    const std::vector<std::string>& type_filter) {
    if (radius_m < 0.0) throw std::invalid_argument("radius must be non-negative");
    std::vector<std::pair<const Place*, double>> out;
    for (const auto& [id, place] : w.places()) {
        const double d = haversine_distance(p, place.coord);
        if (d > radius_m) continue;
        if (!type_filter.empty()) {
            const bool hit = std::any_of(
                place.types.begin(), place.types.end(), [&](const std::string& t) {
                    return std::find(type_filter.begin(), type_filter.end(), t) !=
                           type_filter.end();
                });
            if (!hit) continue;
        }
        out.emplace_back(&place, d);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first->id < b.first->id;
    });
    return out;
}

const Place& place_details(const World& w, const std::string& id) {
    return w.place(id);
}

}  // namespace citywalk
