#include "citywalk/geo.hpp"

#include <algorithm>
#include <cmath>

#include "citywalk/errors.hpp"

namespace citywalk {

double normalize_heading(double deg) {
    double h = std::fmod(deg, 360.0);
    if (h < 0.0) h += 360.0;
    // fmod can return 360.0 - epsilon rounding back up; pin the edge case
    if (h >= 360.0) h = 0.0;
    return h;
}

double normalize_lng(double deg) {
    double l = std::fmod(deg + 180.0, 360.0);
    if (l < 0.0) l += 360.0;
    return l - 180.0;
}

GeoCoordinate::GeoCoordinate(double lat_deg, double lng_deg) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lng_deg)) {
        throw std::invalid_argument("coordinate components must be finite");
    }
    if (lat_deg < -90.0 || lat_deg > 90.0) {
        throw std::invalid_argument("latitude out of range [-90, 90]");
    }
    lat = lat_deg;
    lng = normalize_lng(lng_deg);
}

Pose::Pose(double heading_deg, double pitch_deg, double fov_deg) {
    if (!std::isfinite(heading_deg) || !std::isfinite(pitch_deg) || !std::isfinite(fov_deg)) {
        throw std::invalid_argument("pose components must be finite");
    }
    heading = normalize_heading(heading_deg);
    pitch = std::clamp(pitch_deg, -90.0, 90.0);
    fov = std::clamp(fov_deg, 20.0, 120.0);
}

namespace {

// 2D cross product of (b-a) x (c-a) in lat/lng space.
double cross(const GeoCoordinate& a, const GeoCoordinate& b, const GeoCoordinate& c) {
    return (b.lng - a.lng) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lng - a.lng);
}

bool on_segment(const GeoCoordinate& p, const GeoCoordinate& a, const GeoCoordinate& b) {
    if (std::fabs(cross(a, b, p)) > 1e-12) return false;
    return p.lat >= std::min(a.lat, b.lat) - 1e-12 &&
           p.lat <= std::max(a.lat, b.lat) + 1e-12 &&
           p.lng >= std::min(a.lng, b.lng) - 1e-12 &&
           p.lng <= std::max(a.lng, b.lng) + 1e-12;
}

// Proper or improper intersection of segments ab and cd.
bool segments_intersect(const GeoCoordinate& a, const GeoCoordinate& b,
                        const GeoCoordinate& c, const GeoCoordinate& d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && on_segment(a, c, d)) return true;
    if (d2 == 0 && on_segment(b, c, d)) return true;
    if (d3 == 0 && on_segment(c, a, b)) return true;
    if (d4 == 0 && on_segment(d, a, b)) return true;
    return false;
}

double shoelace_area(const std::vector<GeoCoordinate>& v) {
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        acc += p.lng * q.lat - q.lng * p.lat;
    }
    return 0.5 * acc;
}

}  // namespace

GeoPolygon::GeoPolygon(std::vector<GeoCoordinate> vertices)
    : vertices_(std::move(vertices)) {
    const size_t n = vertices_.size();
    if (n < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices");
    }
    if (vertices_.front() == vertices_.back()) {
        throw std::invalid_argument("polygon must not repeat the first vertex as the last");
    }
    if (std::fabs(shoelace_area(vertices_)) < 1e-12) {
        throw std::invalid_argument("polygon area must be nonzero");
    }
    // Non-adjacent edges must not intersect.
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(vertices_[i], vertices_[(i + 1) % n],
                                   vertices_[j], vertices_[(j + 1) % n])) {
                throw std::invalid_argument("polygon must not self-intersect");
            }
        }
    }
    min_lat_ = max_lat_ = vertices_[0].lat;
    min_lng_ = max_lng_ = vertices_[0].lng;
    for (const auto& v : vertices_) {
        min_lat_ = std::min(min_lat_, v.lat);
        max_lat_ = std::max(max_lat_, v.lat);
        min_lng_ = std::min(min_lng_, v.lng);
        max_lng_ = std::max(max_lng_, v.lng);
    }
}

double haversine_distance(const GeoCoordinate& a, const GeoCoordinate& b) {
    const double lat1 = deg2rad(a.lat);
    const double lat2 = deg2rad(b.lat);
    const double dlat = lat2 - lat1;
    const double dlng = deg2rad(b.lng - a.lng);

    const double s = std::sin(dlat * 0.5) * std::sin(dlat * 0.5) +
                     std::cos(lat1) * std::cos(lat2) *
                     std::sin(dlng * 0.5) * std::sin(dlng * 0.5);
    const double c = 2.0 * std::atan2(std::sqrt(s), std::sqrt(1.0 - s));
    return kEarthRadiusM * c;
}

double initial_bearing(const GeoCoordinate& a, const GeoCoordinate& b) {
    if (a == b) {
        throw CoincidentPoints("initial_bearing undefined for coincident points");
    }
    const double lat1 = deg2rad(a.lat);
    const double lat2 = deg2rad(b.lat);
    const double dlng = deg2rad(b.lng - a.lng);

    const double y = std::sin(dlng) * std::cos(lat2);
    const double x = std::cos(lat1) * std::sin(lat2) -
                     std::sin(lat1) * std::cos(lat2) * std::cos(dlng);
    return normalize_heading(rad2deg(std::atan2(y, x)));
}

GeoCoordinate destination_point(const GeoCoordinate& origin, double heading_deg,
                                double distance_m) {
    if (distance_m < 0.0) {
        throw std::invalid_argument("distance must be non-negative");
    }
    if (distance_m == 0.0) return origin;

    const double delta = distance_m / kEarthRadiusM;
    const double theta = deg2rad(normalize_heading(heading_deg));
    const double lat1 = deg2rad(origin.lat);
    const double lng1 = deg2rad(origin.lng);

    const double sin_lat2 = std::sin(lat1) * std::cos(delta) +
                            std::cos(lat1) * std::sin(delta) * std::cos(theta);
    const double lat2 = std::asin(std::clamp(sin_lat2, -1.0, 1.0));
    const double lng2 = lng1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                                          std::cos(delta) - std::sin(lat1) * std::sin(lat2));
    return GeoCoordinate(rad2deg(lat2), normalize_lng(rad2deg(lng2)));
}

double angular_offset(double reference_heading, double target_bearing) {
    double d = std::fmod(target_bearing - reference_heading, 360.0);
    if (d < -180.0) d += 360.0;
    if (d >= 180.0) d -= 360.0;
    return d;
}

bool point_in_polygon(const GeoCoordinate& p, const GeoPolygon& poly) {
    const auto& v = poly.vertices();
    const size_t n = v.size();
    // Boundary counts as inside.
    for (size_t i = 0; i < n; ++i) {
        if (on_segment(p, v[i], v[(i + 1) % n])) return true;
    }
    // Winding number.
    int winding = 0;
    for (size_t i = 0; i < n; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % n];
        if (a.lat <= p.lat) {
            if (b.lat > p.lat && cross(a, b, p) > 0) ++winding;
        } else {
            if (b.lat <= p.lat && cross(a, b, p) < 0) --winding;
        }
    }
    return winding != 0;
}

}  // namespace citywalk
