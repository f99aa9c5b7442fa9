#include "common/geo.hpp"

namespace smarttrap {

namespace {
constexpr double kEarthRadiusM = 6371000.0;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

bool geofix_valid(const GeoFix& fix) {
    return std::isfinite(fix.latitude) && std::isfinite(fix.longitude) &&
           fix.latitude >= -90.0 && fix.latitude <= 90.0 &&
           fix.longitude >= -180.0 && fix.longitude <= 180.0;
}

bool geobounds_valid(const GeoBounds& b) {
    return geofix_valid({b.min_lat, b.min_lon}) && geofix_valid({b.max_lat, b.max_lon}) &&
           b.min_lon <= b.max_lon && b.min_lat <= b.max_lat;
}

LocalScale local_scale(double reference_lat_deg) {
    const double m_per_deg = kPi / 180.0 * kEarthRadiusM;
    return {m_per_deg, m_per_deg * std::cos(reference_lat_deg * kPi / 180.0)};
}

double local_distance_m(const GeoFix& a, const GeoFix& b, const LocalScale& scale) {
    const double dx = (a.longitude - b.longitude) * scale.meters_per_deg_lon;
    const double dy = (a.latitude - b.latitude) * scale.meters_per_deg_lat;
    return std::hypot(dx, dy);
}

}  // namespace smarttrap
