#pragma once

#include <string>
#include <vector>

namespace citywalk {

// Mean Earth radius in meters. The engine models the Earth as a sphere;
// ellipsoidal geodesy is out of scope at city scale.
inline constexpr double kEarthRadiusM = 6371008.8;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Normalize an angle in degrees into [0, 360).
double normalize_heading(double deg);

/// Normalize a longitude in degrees into [-180, 180).
double normalize_lng(double deg);

/**
 * A point on the model sphere. Latitude must lie in [-90, 90];
 * longitude is normalized to [-180, 180) on construction.
 */
struct GeoCoordinate {
    double lat = 0.0;
    double lng = 0.0;

    GeoCoordinate() = default;
    GeoCoordinate(double lat_deg, double lng_deg);

    bool operator==(const GeoCoordinate& o) const = default;
};

/**
 * Camera orientation for street-view sensing.
 * heading in [0, 360) (normalized), pitch clamped to [-90, 90],
 * fov clamped to [20, 120].
 */
struct Pose {
    double heading = 0.0;
    double pitch = 0.0;
    double fov = 90.0;

    Pose() = default;
    Pose(double heading_deg, double pitch_deg, double fov_deg);

    bool operator==(const Pose& o) const = default;
};

/**
 * Simple (non-self-intersecting) polygon on the sphere, treated as planar
 * in lat/lng space at city scale. At least 3 vertices, nonzero area, first
 * vertex not repeated as the last.
 */
class GeoPolygon {
public:
    explicit GeoPolygon(std::vector<GeoCoordinate> vertices);

    const std::vector<GeoCoordinate>& vertices() const { return vertices_; }

    // Axis-aligned bounding box in (lat, lng) degrees.
    double min_lat() const { return min_lat_; }
    double max_lat() const { return max_lat_; }
    double min_lng() const { return min_lng_; }
    double max_lng() const { return max_lng_; }

private:
    std::vector<GeoCoordinate> vertices_;
    double min_lat_, max_lat_, min_lng_, max_lng_;
};

/// Great-circle distance in meters. Symmetric, non-negative, zero iff equal.
double haversine_distance(const GeoCoordinate& a, const GeoCoordinate& b);

/// Initial bearing from a to b in degrees, [0, 360), 0 = north, 90 = east.
/// Throws CoincidentPoints when a == b.
double initial_bearing(const GeoCoordinate& a, const GeoCoordinate& b);

/// Point reached by traveling `distance_m` meters from `origin` along the
/// great circle with the given initial heading.
GeoCoordinate destination_point(const GeoCoordinate& origin, double heading_deg,
                                double distance_m);

/// Signed angular offset from a reference heading to a target bearing,
/// in [-180, 180). Positive means clockwise (to the right).
double angular_offset(double reference_heading, double target_bearing);

/// Containment test with boundary points counting as inside.
bool point_in_polygon(const GeoCoordinate& p, const GeoPolygon& poly);

}  // namespace citywalk
