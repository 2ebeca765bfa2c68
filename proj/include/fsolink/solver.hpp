// Inverse feasibility queries: how far a link stretches at a transmit-power
// cap before available margin drops below a floor. The budget is log-linear
// in distance, so the solves are closed-form; bisection is kept as a generic
// cross-check.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "fsolink/budget.hpp"

namespace fsolink {

struct FeasibilityQuery {
    PowerValue tx_power_cap;
    DecibelValue margin_floor_db;
    TransmitterSpec tx;
    ReceiverSpec rx;
    LinkSpec link;
    std::optional<GroundSite> site;            // up-down queries only
    std::optional<AtmosphereSpec> atmosphere;  // up-down queries only
    EarthModel earth;
};

struct SlantReach {
    double slant_distance_km = 0.0;
    double sat_altitude_km = 0.0;
};

namespace detail {

// Distance at which the free-space loss equals the loss budget left after
// the fixed factors; nullopt when no physical distance can close the budget.
inline std::optional<double> distance_for_path_loss_km(double wavelength_m,
                                                       double needed_path_loss) {
    if (!std::isfinite(needed_path_loss) || needed_path_loss <= 0.0 || needed_path_loss >= 1.0) {
        return std::nullopt;
    }
    const double distance_m =
        wavelength_m / (4.0 * std::numbers::pi) / std::sqrt(needed_path_loss);
    return distance_m / 1000.0;
}

}  // namespace detail

// Largest inter-satellite distance with achievable margin at the power cap
// still at or above the floor.
inline std::optional<double> max_isl_distance_km(const FeasibilityQuery& q) {
    if (q.site || q.atmosphere) {
        throw config_error("inter-satellite feasibility query must not carry ground/atmosphere");
    }
    const double needed_rx_w =
        watts_from_dbm(DecibelValue(q.rx.sensitivity_dbm + q.margin_floor_db.db())).watts();
    const double needed_path_loss =
        needed_rx_w / (q.tx_power_cap.watts() * static_terminal_gain(q.tx, q.rx, q.link));
    return detail::distance_for_path_loss_km(q.link.wavelength_m, needed_path_loss);
}

// Largest slant distance at the query's fixed elevation, plus the satellite
// altitude it corresponds to. The atmospheric loss does not depend on the
// distance at a fixed elevation, so the inversion stays closed-form.
inline std::optional<SlantReach> max_slant_distance_km(const FeasibilityQuery& q) {
    if (!q.site || !q.atmosphere) {
        throw config_error("up-down feasibility query requires ground site and atmosphere");
    }
    const double needed_rx_w =
        watts_from_dbm(DecibelValue(q.rx.sensitivity_dbm + q.margin_floor_db.db())).watts();
    const double fixed_gain = static_terminal_gain(q.tx, q.rx, q.link) *
                              atmospheric_loss(*q.site, *q.atmosphere, q.link);
    const double needed_path_loss = needed_rx_w / (q.tx_power_cap.watts() * fixed_gain);
    const auto distance_km = detail::distance_for_path_loss_km(q.link.wavelength_m,
                                                               needed_path_loss);
    if (!distance_km) {
        return std::nullopt;
    }
    return SlantReach{*distance_km, altitude_from_slant_km(*q.site, *distance_km, q.earth)};
}

// Plain bisection on [lo, hi]; f need only change sign across the bracket.
// Tolerance is relative on the independent variable.
template <class F>
double bisect(F f, double lo, double hi, double tolerance = 1e-9) {
    detail::require_finite(lo, "bisect lo");
    detail::require_finite(hi, "bisect hi");
    detail::require_positive(tolerance, "bisect tolerance");
    if (lo >= hi) {
        throw domain_error("bisect: lo must be < hi");
    }
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        throw domain_error("bisect: no sign change over the bracket");
    }
    for (int iteration = 0; iteration < 200; ++iteration) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tolerance * std::max({1.0, std::abs(lo), std::abs(hi)})) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fsolink
