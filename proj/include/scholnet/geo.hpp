#pragma once

#include <cmath>
#include <string>

#include "scholnet/errors.hpp"

namespace scholnet {

/// Mean Earth radius (IUGG), fixed for reproducibility.
inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kBinWidthKm = 50.0;

struct GeoPoint {
    double lat = 0.0;  // decimal degrees, [-90, 90]
    double lon = 0.0;  // decimal degrees, [-180, 180]
};

inline bool valid_geo_point(GeoPoint p) {
    return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

/// Great-circle distance in kilometers, haversine formulation.
/// Symmetric; exactly zero for identical points.
inline double great_circle_distance(GeoPoint p, GeoPoint q) {
    constexpr double deg = 3.14159265358979323846 / 180.0;
    double phi1 = p.lat * deg, phi2 = q.lat * deg;
    double dphi = (q.lat - p.lat) * deg;
    double dlam = (q.lon - p.lon) * deg;
    double sp = std::sin(dphi / 2.0);
    double sl = std::sin(dlam / 2.0);
    double a = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    if (a < 0.0) a = 0.0;
    if (a > 1.0) a = 1.0;
    return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
}

/// 1-based 50 km bin index: bin k covers [50(k-1), 50k).
inline int distance_bin(double km) {
    if (km < 0.0 || std::isnan(km))
        raise(Errc::NegativeDistance, "distance " + std::to_string(km) + " km");
    return int(std::floor(km / kBinWidthKm)) + 1;
}

inline double bin_lower_km(int bin) { return kBinWidthKm * (bin - 1); }
inline double bin_upper_km(int bin) { return kBinWidthKm * bin; }

}  // namespace scholnet
