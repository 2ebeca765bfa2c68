// Terminal-level gains and pointing losses for optical links.
#pragma once

#include <cmath>
#include <numbers>

#include "fsolink/quantities.hpp"

namespace fsolink {

enum class Modulation { kOnOffKeying };

struct TransmitterSpec {
    double optics_efficiency = 1.0;         // in (0, 1]
    double divergence_full_angle_rad = 0.0; // full transmitting divergence angle
    double pointing_error_rad = 0.0;
};

struct ReceiverSpec {
    double optics_efficiency = 1.0;    // in (0, 1]
    double telescope_diameter_m = 0.0;
    double pointing_error_rad = 0.0;
    double sensitivity_dbm = 0.0;      // minimum received power for the configured rate/BER
};

// Carrier description. Data rate, bit error rate, and modulation are carried
// for reporting only; the receiver sensitivity already encodes them.
struct LinkSpec {
    double wavelength_m = 0.0;
    double data_rate_gbps = 0.0;
    double bit_error_rate = 0.0;
    Modulation modulation = Modulation::kOnOffKeying;
};

inline void validate(const TransmitterSpec& tx) {
    detail::require_positive(tx.optics_efficiency, "transmitter optics_efficiency");
    if (tx.optics_efficiency > 1.0) {
        throw domain_error("transmitter optics_efficiency must be <= 1, got " +
                           detail::describe(tx.optics_efficiency));
    }
    detail::require_positive(tx.divergence_full_angle_rad, "divergence_full_angle_rad");
    detail::require_non_negative(tx.pointing_error_rad, "transmitter pointing_error_rad");
}

inline void validate(const ReceiverSpec& rx) {
    detail::require_positive(rx.optics_efficiency, "receiver optics_efficiency");
    if (rx.optics_efficiency > 1.0) {
        throw domain_error("receiver optics_efficiency must be <= 1, got " +
                           detail::describe(rx.optics_efficiency));
    }
    detail::require_positive(rx.telescope_diameter_m, "telescope_diameter_m");
    detail::require_non_negative(rx.pointing_error_rad, "receiver pointing_error_rad");
    detail::require_finite(rx.sensitivity_dbm, "sensitivity_dbm");
}

inline void validate(const LinkSpec& link) {
    detail::require_positive(link.wavelength_m, "wavelength_m");
    detail::require_positive(link.data_rate_gbps, "data_rate_gbps");
    detail::require_positive(link.bit_error_rate, "bit_error_rate");
}

// G_T = 16 / Theta^2 with the full divergence angle.
inline double transmitter_gain(const TransmitterSpec& tx) {
    validate(tx);
    const double theta = tx.divergence_full_angle_rad;
    return 16.0 / (theta * theta);
}

// G_R = (pi D_R / lambda)^2.
inline double receiver_gain(const ReceiverSpec& rx, const LinkSpec& link) {
    validate(rx);
    validate(link);
    const double x = std::numbers::pi * rx.telescope_diameter_m / link.wavelength_m;
    return x * x;
}

// exp(-G theta^2); equals one for perfect pointing.
inline double pointing_loss(double gain, double pointing_error_rad) {
    detail::require_positive(gain, "gain");
    detail::require_non_negative(pointing_error_rad, "pointing_error_rad");
    return std::exp(-gain * pointing_error_rad * pointing_error_rad);
}

// Distance-independent product eta_T eta_R G_T G_R L_T L_R common to every
// link kind.
inline double static_terminal_gain(const TransmitterSpec& tx, const ReceiverSpec& rx,
                                   const LinkSpec& link) {
    const double g_t = transmitter_gain(tx);
    const double g_r = receiver_gain(rx, link);
    return tx.optics_efficiency * rx.optics_efficiency * g_t * g_r *
           pointing_loss(g_t, tx.pointing_error_rad) * pointing_loss(g_r, rx.pointing_error_rad);
}

inline DecibelValue static_gain_db(const TransmitterSpec& tx, const ReceiverSpec& rx,
                                   const LinkSpec& link) {
    return db_from_linear(static_terminal_gain(tx, rx, link), "static terminal gain");
}

}  // namespace fsolink
