// Earth/satellite/ground-station geometry: slant range, the atmospheric
// traversal length, and the inverse map from slant range to altitude.
#pragma once

#include <cmath>
#include <numbers>

#include "fsolink/errors.hpp"
#include "fsolink/quantities.hpp"

namespace fsolink {

// Spherical Earth; a single radius constant is enough at these scales.
struct EarthModel {
    double radius_km = 6378.1;
};

// Minimum look elevation. csc(elevation) is singular at the horizon, so the
// traversal-length formula is only accepted from one degree upward.
inline constexpr double kMinElevationDeg = 1.0;

// Validity band of the altitude extinction polynomial.
inline constexpr double kMaxSiteAltitudeKm = 5.0;

// Ground-station position above mean sea level plus the look elevation.
struct GroundSite {
    double altitude_km = 0.0;
    double elevation_deg = 90.0;
};

inline double radians_from_degrees(double degrees) {
    return degrees * std::numbers::pi / 180.0;
}

// Cosine of the elevation via the complementary angle, so that a 90 degree
// elevation yields exactly zero and the zenith identities hold bit-for-bit.
inline double cos_elevation(double elevation_deg) {
    return std::sin(radians_from_degrees(90.0 - elevation_deg));
}

inline void validate(const EarthModel& earth) {
    detail::require_positive(earth.radius_km, "earth radius_km");
}

inline void validate(const GroundSite& site) {
    detail::require_finite(site.altitude_km, "ground altitude_km");
    detail::require_finite(site.elevation_deg, "ground elevation_deg");
    if (site.altitude_km < 0.0 || site.altitude_km > kMaxSiteAltitudeKm) {
        throw domain_error("ground altitude_km must lie in [0, 5] km, the validity band of the "
                           "altitude extinction polynomial; got " +
                           detail::describe(site.altitude_km));
    }
    if (site.elevation_deg < kMinElevationDeg || site.elevation_deg > 90.0) {
        throw domain_error("ground elevation_deg must lie in [1, 90] degrees; csc(elevation) is "
                           "singular at the horizon; got " +
                           detail::describe(site.elevation_deg));
    }
}

// Line-of-sight distance between the site and a satellite at the given
// altitude, looking along the site's elevation angle.
inline double slant_distance_km(const GroundSite& site, double sat_altitude_km,
                                const EarthModel& earth = {}) {
    validate(site);
    validate(earth);
    detail::require_finite(sat_altitude_km, "sat_altitude_km");
    if (sat_altitude_km <= site.altitude_km) {
        throw domain_error("satellite below site: sat_altitude_km " +
                           detail::describe(sat_altitude_km) + " <= ground altitude_km " +
                           detail::describe(site.altitude_km));
    }
    const double r = earth.radius_km + site.altitude_km;
    const double h = sat_altitude_km - site.altitude_km;
    const double cos_e = cos_elevation(site.elevation_deg);
    if (cos_e == 0.0) {
        return h;  // zenith
    }
    const double sin_e = std::sin(radians_from_degrees(site.elevation_deg));
    const double ratio = (r + h) / r;
    return r * (std::sqrt(ratio * ratio - cos_e * cos_e) - sin_e);
}

// Inverse of slant_distance_km, closed form via the law of cosines.
inline double altitude_from_slant_km(const GroundSite& site, double slant_km,
                                     const EarthModel& earth = {}) {
    validate(site);
    validate(earth);
    detail::require_positive(slant_km, "slant distance_km");
    const double r = earth.radius_km + site.altitude_km;
    const double sin_e = std::sin(radians_from_degrees(site.elevation_deg));
    const double h = std::sqrt(r * r + slant_km * slant_km + 2.0 * r * slant_km * sin_e) - r;
    return h + site.altitude_km;
}

// Length of the beam path through the troposphere layer: (h_A - h_E) csc(e).
inline double atmospheric_path_length_km(const GroundSite& site, double troposphere_height_km) {
    validate(site);
    detail::require_finite(troposphere_height_km, "troposphere_height_km");
    if (troposphere_height_km <= site.altitude_km) {
        throw domain_error("troposphere top at or below site: troposphere_height_km " +
                           detail::describe(troposphere_height_km) + " <= ground altitude_km " +
                           detail::describe(site.altitude_km));
    }
    return (troposphere_height_km - site.altitude_km) /
           std::sin(radians_from_degrees(site.elevation_deg));
}

}  // namespace fsolink
