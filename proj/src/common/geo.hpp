#pragma once

#include <cmath>

namespace smarttrap {

// A GPS fix in decimal degrees.
struct GeoFix {
    double latitude = 0.0;   // [-90, 90]
    double longitude = 0.0;  // [-180, 180]

    bool operator==(const GeoFix&) const = default;
};

bool geofix_valid(const GeoFix& fix);

// Axis-aligned lat/lon rectangle.
struct GeoBounds {
    double min_lon = 0.0;
    double min_lat = 0.0;
    double max_lon = 0.0;
    double max_lat = 0.0;

    bool operator==(const GeoBounds&) const = default;

    double center_lat() const { return 0.5 * (min_lat + max_lat); }
    double center_lon() const { return 0.5 * (min_lon + max_lon); }
    bool contains(const GeoFix& fix) const {
        return fix.longitude >= min_lon && fix.longitude <= max_lon &&
               fix.latitude >= min_lat && fix.latitude <= max_lat;
    }
};

bool geobounds_valid(const GeoBounds& b);

// Local equirectangular approximation, adequate for sub-kilometre fields.
// Both factors are evaluated at a reference latitude chosen by the caller
// (normally the scenario or grid centre).
struct LocalScale {
    double meters_per_deg_lat;
    double meters_per_deg_lon;
};

LocalScale local_scale(double reference_lat_deg);

// Planar distance in meters between two fixes under the given scale.
double local_distance_m(const GeoFix& a, const GeoFix& b, const LocalScale& scale);

}  // namespace smarttrap
