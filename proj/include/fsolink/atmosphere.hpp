// Atmospheric attenuation for uplink/downlink: Mie scattering through an
// altitude-cubic extinction ratio, and geometrical (fog/cloud) scattering
// through visibility, Kim's model coefficient, and Beer-Lambert decay.
#pragma once

#include <cmath>

#include "fsolink/geometry.hpp"
#include "fsolink/optics.hpp"
#include "fsolink/quantities.hpp"

namespace fsolink {

struct AtmosphereSpec {
    double liquid_water_content_g_per_m3 = 0.0;
    double cloud_number_concentration_per_cm3 = 0.0;
    double particle_size_coefficient = 1.6;  // Kim's model value for visibility > 50 km
    double troposphere_height_km = 20.0;
};

inline void validate(const AtmosphereSpec& atmos) {
    detail::require_positive(atmos.liquid_water_content_g_per_m3, "liquid_water_content_g_per_m3");
    detail::require_positive(atmos.cloud_number_concentration_per_cm3,
                             "cloud_number_concentration_per_cm3");
    detail::require_non_negative(atmos.particle_size_coefficient, "particle_size_coefficient");
    detail::require_positive(atmos.troposphere_height_km, "troposphere_height_km");
}

// Wavelength-dependent coefficients of the extinction-ratio cubic.
struct MieCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

// Band over which the coefficient polynomials are considered trustworthy.
inline constexpr double kMieBandLowUm = 0.5;
inline constexpr double kMieBandHighUm = 2.5;

inline bool mie_wavelength_in_band(double wavelength_um) {
    return wavelength_um >= kMieBandLowUm && wavelength_um <= kMieBandHighUm;
}

inline MieCoefficients mie_coefficients(double wavelength_um) {
    detail::require_finite(wavelength_um, "wavelength_um");
    const double l = wavelength_um;
    return {
        -0.000545 * l * l + 0.002 * l - 0.0038,
        0.00628 * l * l - 0.0232 * l + 0.00439,
        -0.028 * l * l + 0.101 * l - 0.18,
        -0.228 * l * l * l + 0.922 * l * l - 1.26 * l + 0.719,
    };
}

// Extinction ratio rho at the site altitude. The polynomial is only valid for
// altitudes in [0, 5] km, and must come out positive to describe attenuation.
inline double mie_extinction_ratio(double site_altitude_km, const MieCoefficients& coeffs) {
    detail::require_finite(site_altitude_km, "site_altitude_km");
    if (site_altitude_km < 0.0 || site_altitude_km > kMaxSiteAltitudeKm) {
        throw domain_error("site_altitude_km outside the [0, 5] km validity range of the "
                           "extinction polynomial, got " +
                           detail::describe(site_altitude_km));
    }
    const double h = site_altitude_km;
    const double rho = coeffs.a * h * h * h + coeffs.b * h * h + coeffs.c * h + coeffs.d;
    if (rho <= 0.0) {
        throw domain_error("extinction ratio evaluates to " + detail::describe(rho) +
                           " at altitude " + detail::describe(site_altitude_km) +
                           " km; the polynomial does not describe attenuation here");
    }
    return rho;
}

// I_m = exp(-rho / sin(elevation)).
inline double mie_attenuation(double extinction_ratio, double elevation_deg) {
    detail::require_positive(extinction_ratio, "extinction_ratio");
    detail::require_finite(elevation_deg, "elevation_deg");
    if (elevation_deg < kMinElevationDeg || elevation_deg > 90.0) {
        throw domain_error("elevation_deg must lie in [1, 90] degrees, got " +
                           detail::describe(elevation_deg));
    }
    return std::exp(-extinction_ratio / std::sin(radians_from_degrees(elevation_deg)));
}

// V = 1.002 / (L_W N)^0.6473, in km.
inline double visibility_km(const AtmosphereSpec& atmos) {
    validate(atmos);
    const double product =
        atmos.liquid_water_content_g_per_m3 * atmos.cloud_number_concentration_per_cm3;
    return 1.002 / std::pow(product, 0.6473);
}

// theta_A = (3.91 / V) (lambda / 550 nm)^-phi, per km.
inline double attenuation_coefficient_per_km(double visibility_km, double wavelength_nm,
                                             double particle_size_coefficient) {
    detail::require_positive(visibility_km, "visibility_km");
    detail::require_positive(wavelength_nm, "wavelength_nm");
    detail::require_non_negative(particle_size_coefficient, "particle_size_coefficient");
    return 3.91 / visibility_km * std::pow(wavelength_nm / 550.0, -particle_size_coefficient);
}

// Beer-Lambert decay I_g = exp(-theta_A d_A).
inline double geometric_attenuation(double attenuation_per_km, double path_length_km) {
    detail::require_non_negative(attenuation_per_km, "attenuation_per_km");
    detail::require_non_negative(path_length_km, "path_length_km");
    return std::exp(-attenuation_per_km * path_length_km);
}

// Every stage of the combined loss, for table columns and diagnostics.
struct AtmosphericBreakdown {
    double extinction_ratio = 0.0;   // rho
    double mie_loss = 1.0;           // I_m
    double visibility_km = 0.0;      // V
    double attenuation_per_km = 0.0; // theta_A
    double path_length_km = 0.0;     // d_A
    double geometric_loss = 1.0;     // I_g
    double total_loss = 1.0;         // L_A = I_m I_g
};

inline AtmosphericBreakdown atmospheric_breakdown(const GroundSite& site,
                                                  const AtmosphereSpec& atmos,
                                                  const LinkSpec& link) {
    validate(site);
    validate(atmos);
    validate(link);
    AtmosphericBreakdown out;
    const MieCoefficients coeffs = mie_coefficients(link.wavelength_m * 1e6);
    out.extinction_ratio = mie_extinction_ratio(site.altitude_km, coeffs);
    out.mie_loss = mie_attenuation(out.extinction_ratio, site.elevation_deg);
    out.visibility_km = visibility_km(atmos);
    out.attenuation_per_km = attenuation_coefficient_per_km(
        out.visibility_km, link.wavelength_m * 1e9, atmos.particle_size_coefficient);
    out.path_length_km = atmospheric_path_length_km(site, atmos.troposphere_height_km);
    out.geometric_loss = geometric_attenuation(out.attenuation_per_km, out.path_length_km);
    out.total_loss = out.mie_loss * out.geometric_loss;
    return out;
}

// L_A = I_m I_g as a linear factor in (0, 1).
inline double atmospheric_loss(const GroundSite& site, const AtmosphereSpec& atmos,
                               const LinkSpec& link) {
    return atmospheric_breakdown(site, atmos, link).total_loss;
}

}  // namespace fsolink
