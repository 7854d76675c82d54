#include "citywalk/worldgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "citywalk/errors.hpp"
#include "citywalk/rng.hpp"

namespace citywalk {

const std::vector<std::string>& default_place_type_vocabulary() {
    static const std::vector<std::string> kTypes = {
        "accounting", "airport", "amusement_park", "aquarium", "art_gallery",
        "atm", "bakery", "bank", "bar", "beauty_salon", "bicycle_store",
        "book_store", "bowling_alley", "bus_station", "cafe", "campground",
        "car_dealer", "car_rental", "car_repair", "car_wash", "casino",
        "cemetery", "church", "city_hall", "clothing_store", "convenience_store",
        "courthouse", "dentist", "department_store", "doctor", "drugstore",
        "electrician", "electronics_store", "embassy", "fire_station", "florist",
        "funeral_home", "furniture_store", "gas_station", "gym", "hair_care",
        "hardware_store", "hindu_temple", "home_goods_store", "hospital",
        "insurance_agency", "jewelry_store", "laundry", "lawyer", "library",
        "light_rail_station", "liquor_store", "local_government_office",
        "locksmith", "lodging", "meal_delivery", "meal_takeaway", "mosque",
        "movie_rental", "movie_theater", "moving_company", "museum",
        "night_club", "painter", "park", "parking", "pet_store", "pharmacy",
        "physiotherapist", "plumber", "police", "post_office", "primary_school",
        "real_estate_agency", "restaurant", "roofing_contractor", "rv_park",
        "school", "secondary_school", "shoe_store", "shopping_mall", "spa",
        "stadium", "storage", "store", "subway_station", "supermarket",
        "synagogue", "taxi_stand", "tourist_attraction", "train_station",
        "transit_station", "travel_agency", "university", "veterinary_care",
        "zoo"};
    return kTypes;
}

const std::vector<std::string>& default_instance_categories() {
    static const std::vector<std::string> kCategories = {
        "trash bin", "fire hydrant", "park bench", "mailbox"};
    return kCategories;
}

namespace {

constexpr double kMetersPerDegLat = kEarthRadiusM * kPi / 180.0;

std::string zero_padded(const char* prefix, int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%04d", prefix, n);
    return buf;
}

struct Candidate {
    int row, col;
    GeoCoordinate coord;
};

// Disjoint-set over node indices for connectivity bookkeeping.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

struct NameParts {
    std::vector<std::string> adjectives;
    std::vector<std::string> nouns;
};

const NameParts& name_parts() {
    static const NameParts kParts = {
        {"Golden", "Blue", "Old", "Corner", "Grand", "Little", "Silver", "Sunny",
         "Green", "Royal"},
        {"Harbor", "Garden", "Lane", "Market", "House", "Bridge", "Street",
         "Square", "Anchor", "Lantern"}};
    return kParts;
}

// Tags embedded into review text; the keyword reasoner scores against these.
const std::vector<std::string>& review_tags() {
    static const std::vector<std::string> kTags = {
        "spicy", "authentic", "cozy", "cheap", "crowded", "quiet"};
    return kTags;
}

std::string review_text(const std::string& lang, const std::string& tag_a,
                        const std::string& tag_b) {
    // Non-English templates keep the tag words verbatim so keyword scoring
    // stays language-agnostic.
    if (lang == "en") {
        return "Really " + tag_a + " spot, and the " + tag_b + " vibe shows.";
    }
    return "[" + lang + "] muy " + tag_a + ", ambiente " + tag_b + ".";
}

std::string pick_language(SeededRng& rng, const std::map<std::string, double>& mix) {
    if (mix.empty()) return "en";
    double total = 0.0;
    for (const auto& [lang, w] : mix) total += std::max(0.0, w);
    if (total <= 0.0) return mix.begin()->first;
    double r = rng.uniform() * total;
    for (const auto& [lang, w] : mix) {
        r -= std::max(0.0, w);
        if (r < 0.0) return lang;
    }
    return mix.rbegin()->first;
}

}  // namespace

GeoPolygon make_square_area(const GeoCoordinate& center, int node_count,
                            double node_spacing_m) {
    const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(node_count))) + 1);
    const double half_m = 0.5 * side * node_spacing_m + node_spacing_m;
    const double dlat = half_m / kMetersPerDegLat;
    const double dlng = half_m / (kMetersPerDegLat * std::cos(deg2rad(center.lat)));
    return GeoPolygon({GeoCoordinate(center.lat - dlat, center.lng - dlng),
                       GeoCoordinate(center.lat - dlat, center.lng + dlng),
                       GeoCoordinate(center.lat + dlat, center.lng + dlng),
                       GeoCoordinate(center.lat + dlat, center.lng - dlng)});
}

Json generator_params_to_json(const GeneratorParams& p) {
    Json area = Json::array();
    for (const auto& v : p.area.vertices()) area.push_back(Json::array({v.lat, v.lng}));
    Json mix = Json::object();
    for (const auto& [lang, w] : p.language_mix) mix[lang] = w;
    return Json{{"node_count", p.node_count},
                {"area", std::move(area)},
                {"place_density", p.place_density},
                {"instance_density", p.instance_density},
                {"web_visibility_fraction", p.web_visibility_fraction},
                {"language_mix", std::move(mix)},
                {"node_spacing_m", p.node_spacing_m},
                {"edge_keep_probability", p.edge_keep_probability},
                {"require_connected", p.require_connected}};
}

World generate_world(std::uint64_t seed, const GeneratorParams& params) {
    if (params.node_count < 1) throw InfeasibleParams("node_count must be >= 1");
    if (params.place_density < 0.0 || params.instance_density < 0.0) {
        throw InfeasibleParams("densities must be >= 0");
    }
    if (params.web_visibility_fraction < 0.0 || params.web_visibility_fraction > 1.0) {
        throw InfeasibleParams("web_visibility_fraction must be in [0, 1]");
    }
    if (params.node_spacing_m <= 0.0) throw InfeasibleParams("node_spacing_m must be positive");

    const std::vector<std::string>& vocabulary =
        params.vocabulary.empty() ? default_place_type_vocabulary() : params.vocabulary;

    SeededRng rng(hash_combine(seed, stable_hash("worldgen")));
    const GeoPolygon& area = params.area;
    const double mid_lat = 0.5 * (area.min_lat() + area.max_lat());
    const double dlat = params.node_spacing_m / kMetersPerDegLat;
    const double dlng = params.node_spacing_m / (kMetersPerDegLat * std::cos(deg2rad(mid_lat)));

    // Jittered grid candidates inside the area, row-major.
    std::vector<Candidate> candidates;
    std::map<std::pair<int, int>, int> cell_to_candidate;
    {
        const int rows = static_cast<int>((area.max_lat() - area.min_lat()) / dlat) + 1;
        const int cols = static_cast<int>((area.max_lng() - area.min_lng()) / dlng) + 1;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const double jit_lat = rng.uniform(-0.25, 0.25) * dlat;
                const double jit_lng = rng.uniform(-0.25, 0.25) * dlng;
                const double lat = area.min_lat() + r * dlat + jit_lat;
                const double lng = area.min_lng() + c * dlng + jit_lng;
                if (lat < -90.0 || lat > 90.0) continue;
                GeoCoordinate p(lat, lng);
                if (!point_in_polygon(p, area)) continue;
                cell_to_candidate[{r, c}] = static_cast<int>(candidates.size());
                candidates.push_back({r, c, p});
            }
        }
    }
    if (static_cast<int>(candidates.size()) < params.node_count) {
        throw InfeasibleParams("area holds only " + std::to_string(candidates.size()) +
                               " grid nodes at the requested spacing");
    }

    const int n = params.node_count;
    std::map<std::pair<int, int>, int> cell_to_node;
    std::vector<GeoCoordinate> coords(n);
    for (int i = 0; i < n; ++i) {
        coords[i] = candidates[i].coord;
        cell_to_node[{candidates[i].row, candidates[i].col}] = i;
    }

    // Grid adjacency among the selected nodes.
    std::vector<std::pair<int, int>> full_edges;
    for (int i = 0; i < n; ++i) {
        const int r = candidates[i].row;
        const int c = candidates[i].col;
        for (auto [dr, dc] : {std::pair<int, int>{0, 1}, {1, 0}}) {
            auto it = cell_to_node.find({r + dr, c + dc});
            if (it != cell_to_node.end()) full_edges.emplace_back(i, it->second);
        }
    }

    // Bridge disconnected chunks when a connected graph was requested.
    UnionFind uf(n);
    for (auto [a, b] : full_edges) uf.unite(a, b);
    if (params.require_connected) {
        while (true) {
            std::set<int> roots;
            for (int i = 0; i < n; ++i) roots.insert(uf.find(i));
            if (roots.size() <= 1) break;
            const int root0 = *roots.begin();
            int best_a = -1, best_b = -1;
            double best_d = 0.0;
            for (int a = 0; a < n; ++a) {
                if (uf.find(a) != root0) continue;
                for (int b = 0; b < n; ++b) {
                    if (uf.find(b) == root0) continue;
                    const double d = haversine_distance(coords[a], coords[b]);
                    if (best_a < 0 || d < best_d) {
                        best_a = a;
                        best_b = b;
                        best_d = d;
                    }
                }
            }
            full_edges.emplace_back(best_a, best_b);
            uf.unite(best_a, best_b);
        }
    }

    // Keep a spanning tree, prune the rest by seeded chance.
    std::sort(full_edges.begin(), full_edges.end());
    full_edges.erase(std::unique(full_edges.begin(), full_edges.end()), full_edges.end());
    UnionFind tree(n);
    std::vector<std::pair<int, int>> kept;
    for (auto [a, b] : full_edges) {
        if (tree.unite(a, b)) {
            kept.emplace_back(a, b);
        } else if (rng.chance(params.edge_keep_probability)) {
            kept.emplace_back(a, b);
        }
    }

    std::vector<std::string> node_ids(n);
    for (int i = 0; i < n; ++i) node_ids[i] = zero_padded("n", i);

    std::map<std::string, StreetNode> nodes;
    for (int i = 0; i < n; ++i) {
        StreetNode node;
        node.id = node_ids[i];
        node.coord = coords[i];
        nodes.emplace(node.id, std::move(node));
    }
    for (auto [a, b] : kept) {
        const double len = haversine_distance(coords[a], coords[b]);
        nodes[node_ids[a]].neighbors.push_back(
            {node_ids[b], initial_bearing(coords[a], coords[b]), len});
        nodes[node_ids[b]].neighbors.push_back(
            {node_ids[a], initial_bearing(coords[b], coords[a]), len});
    }
    for (auto& [id, node] : nodes) {
        std::sort(node.neighbors.begin(), node.neighbors.end(),
                  [](const NeighborLink& x, const NeighborLink& y) {
                      return x.node_id < y.node_id;
                  });
        for (const auto& link : node.neighbors) {
            if (rng.chance(params.web_visibility_fraction)) {
                node.web_visible_neighbors.push_back(link.node_id);
            }
        }
    }

    // Candidate sites along edges for places and instances: interior points
    // with a lateral offset off the street line.
    struct Site {
        GeoCoordinate coord;
        double edge_heading;
    };
    auto edge_sites = [&](double min_offset, double max_offset) {
        std::vector<Site> sites;
        for (auto [a, b] : kept) {
            const double bearing = initial_bearing(coords[a], coords[b]);
            const double len = haversine_distance(coords[a], coords[b]);
            for (double t : {0.3, 0.55, 0.8}) {
                const GeoCoordinate on_edge = destination_point(coords[a], bearing, len * t);
                const double side = rng.chance(0.5) ? 90.0 : -90.0;
                const double offset = rng.uniform(min_offset, max_offset);
                const GeoCoordinate site = destination_point(on_edge, bearing + side, offset);
                if (point_in_polygon(site, area)) sites.push_back({site, bearing});
            }
        }
        return sites;
    };
    auto take_separated = [](const std::vector<Site>& sites, int want, double min_sep) {
        std::vector<Site> out;
        for (const auto& s : sites) {
            if (static_cast<int>(out.size()) == want) break;
            bool ok = true;
            for (const auto& prev : out) {
                if (haversine_distance(prev.coord, s.coord) < min_sep) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(s);
        }
        return out;
    };

    const int n_places = static_cast<int>(std::llround(params.place_density * n));
    const int n_instances = static_cast<int>(std::llround(params.instance_density * n));

    std::map<std::string, Place> places;
    {
        auto sites = take_separated(edge_sites(5.0, 16.0), n_places, 8.0);
        if (static_cast<int>(sites.size()) < n_places) {
            throw InfeasibleParams("not enough street frontage for requested place_density");
        }
        const auto& parts = name_parts();
        for (int i = 0; i < n_places; ++i) {
            Place p;
            p.id = zero_padded("p", i);
            p.coord = sites[i].coord;
            const std::string& type =
                vocabulary[rng.uniform_int(vocabulary.size())];
            p.types.push_back(type);
            if (rng.chance(0.25)) {
                const std::string& extra = vocabulary[rng.uniform_int(vocabulary.size())];
                if (extra != type) p.types.push_back(extra);
            }
            p.name = parts.adjectives[rng.uniform_int(parts.adjectives.size())] + " " +
                     parts.nouns[rng.uniform_int(parts.nouns.size())] + " " +
                     std::to_string(i);
            if (rng.chance(0.8)) {
                p.rating = std::round(rng.uniform(2.0, 5.0) * 10.0) / 10.0;
            }
            const int n_reviews = static_cast<int>(rng.uniform_int(6));  // 0..5
            const auto& tags = review_tags();
            for (int k = 0; k < n_reviews; ++k) {
                Review rev;
                const std::string lang = pick_language(rng, params.language_mix);
                const std::string& tag_a = tags[rng.uniform_int(tags.size())];
                const std::string& tag_b = tags[rng.uniform_int(tags.size())];
                rev.text = review_text(lang, tag_a, tag_b);
                rev.rating = 1.0 + static_cast<double>(rng.uniform_int(9)) * 0.5;  // 1..5
                p.reviews.push_back(std::move(rev));
            }
            const int n_photos = static_cast<int>(rng.uniform_int(4));  // 0..3
            for (int k = 0; k < n_photos; ++k) {
                p.photo_refs.push_back("ph_" + p.id + "_" + std::to_string(k));
            }
            places.emplace(p.id, std::move(p));
        }
    }

    std::map<std::string, ObjectInstance> instances;
    {
        auto sites = take_separated(edge_sites(2.0, 6.0), n_instances, 4.0);
        if (static_cast<int>(sites.size()) < n_instances) {
            throw InfeasibleParams("not enough street frontage for requested instance_density");
        }
        struct Extent {
            double h, w;
        };
        static const std::map<std::string, Extent> kExtents = {
            {"trash bin", {1.1, 0.6}},
            {"fire hydrant", {0.8, 0.4}},
            {"park bench", {0.9, 1.8}},
            {"mailbox", {1.2, 0.5}}};
        const auto& cats = default_instance_categories();
        for (int i = 0; i < n_instances; ++i) {
            ObjectInstance o;
            o.id = zero_padded("o", i);
            o.coord = sites[i].coord;
            o.category = cats[rng.uniform_int(cats.size())];
            const Extent& e = kExtents.at(o.category);
            o.height_m = e.h * rng.uniform(0.85, 1.15);
            o.width_m = e.w * rng.uniform(0.85, 1.15);
            instances.emplace(o.id, std::move(o));
        }
    }

    WorldMeta meta;
    meta.seed = seed;
    meta.bounds = area.vertices();
    meta.params = canonical_dump(generator_params_to_json(params));

    World w(std::move(meta), std::move(nodes), std::move(places), std::move(instances),
            vocabulary);
    validate_world(w);
    return w;
}

}  // namespace citywalk
