// Full link budgets: received power, free-space path loss, link margin,
// required transmit power, and achievable margin.
#pragma once

#include <numbers>
#include <optional>

#include "fsolink/atmosphere.hpp"
#include "fsolink/geometry.hpp"
#include "fsolink/optics.hpp"
#include "fsolink/quantities.hpp"

namespace fsolink {

enum class LinkKind { kInterSatellite, kUpDown };

// Where the link runs. Up-down links carry the ground site; the satellite
// altitude rides along for reporting only.
struct LinkGeometry {
    LinkKind kind = LinkKind::kInterSatellite;
    double distance_km = 0.0;
    std::optional<GroundSite> site;
    std::optional<double> sat_altitude_km;

    static LinkGeometry inter_satellite(double distance_km) {
        return {LinkKind::kInterSatellite, distance_km, std::nullopt, std::nullopt};
    }

    static LinkGeometry up_down(const GroundSite& site, double sat_altitude_km,
                                const EarthModel& earth = {}) {
        return {LinkKind::kUpDown, slant_distance_km(site, sat_altitude_km, earth), site,
                sat_altitude_km};
    }

    static LinkGeometry up_down_at_distance(const GroundSite& site, double distance_km,
                                            const EarthModel& earth = {}) {
        return {LinkKind::kUpDown, distance_km, site,
                altitude_from_slant_km(site, distance_km, earth)};
    }
};

inline void validate(const LinkGeometry& geom) {
    detail::require_positive(geom.distance_km, "link distance_km");
    if (geom.kind == LinkKind::kUpDown && !geom.site) {
        throw config_error("up-down link geometry requires a ground site");
    }
    if (geom.kind == LinkKind::kInterSatellite && geom.site) {
        throw config_error("inter-satellite link geometry must not carry a ground site");
    }
    if (geom.site) {
        validate(*geom.site);
    }
}

// Every term of the received-power product, in decibels. The ledger closes
// exactly: rx_power_dbm is the double-precision sum of the rows above it.
struct BudgetBreakdown {
    DecibelValue tx_power_dbm;
    DecibelValue tx_efficiency_db;
    DecibelValue rx_efficiency_db;
    DecibelValue tx_gain_db;
    DecibelValue rx_gain_db;
    DecibelValue tx_pointing_db;
    DecibelValue rx_pointing_db;
    DecibelValue path_loss_db;
    DecibelValue atmospheric_db;  // exactly 0 dB on inter-satellite links
    DecibelValue rx_power_dbm;
    DecibelValue margin_db;
};

// Free-space spreading loss (lambda / 4 pi d)^2 as a linear factor.
inline double path_loss(const LinkSpec& link, const LinkGeometry& geom) {
    validate(link);
    validate(geom);
    const double distance_m = geom.distance_km * 1000.0;
    const double x = link.wavelength_m / (4.0 * std::numbers::pi * distance_m);
    return x * x;
}

namespace detail {

inline void require_atmosphere_matches_kind(const LinkGeometry& geom,
                                            const std::optional<AtmosphereSpec>& atmos) {
    if (geom.kind == LinkKind::kUpDown && !atmos) {
        throw config_error("up-down link requires an atmosphere");
    }
    if (geom.kind == LinkKind::kInterSatellite && atmos) {
        throw config_error("inter-satellite link must not take an atmosphere");
    }
}

// Product of every linear factor between transmit and receive power.
inline double total_link_gain(const TransmitterSpec& tx, const ReceiverSpec& rx,
                              const LinkSpec& link, const LinkGeometry& geom,
                              const std::optional<AtmosphereSpec>& atmos) {
    require_atmosphere_matches_kind(geom, atmos);
    double gain = static_terminal_gain(tx, rx, link) * path_loss(link, geom);
    if (geom.kind == LinkKind::kUpDown) {
        gain *= atmospheric_loss(*geom.site, *atmos, link);
    }
    return gain;
}

}  // namespace detail

inline DecibelValue link_margin_db(DecibelValue rx_power_dbm, DecibelValue sensitivity_dbm) {
    return DecibelValue(rx_power_dbm.db() - sensitivity_dbm.db());
}

inline BudgetBreakdown received_power(PowerValue tx_power, const TransmitterSpec& tx,
                                      const ReceiverSpec& rx, const LinkSpec& link,
                                      const LinkGeometry& geom,
                                      const std::optional<AtmosphereSpec>& atmos = std::nullopt) {
    validate(geom);
    detail::require_atmosphere_matches_kind(geom, atmos);
    const double g_t = transmitter_gain(tx);
    const double g_r = receiver_gain(rx, link);

    BudgetBreakdown b;
    b.tx_power_dbm = dbm_from_watts(tx_power);
    b.tx_efficiency_db = db_from_linear(tx.optics_efficiency, "transmitter optics_efficiency");
    b.rx_efficiency_db = db_from_linear(rx.optics_efficiency, "receiver optics_efficiency");
    b.tx_gain_db = db_from_linear(g_t, "transmitter gain");
    b.rx_gain_db = db_from_linear(g_r, "receiver gain");
    b.tx_pointing_db = db_from_linear(pointing_loss(g_t, tx.pointing_error_rad),
                                      "transmitter pointing loss");
    b.rx_pointing_db = db_from_linear(pointing_loss(g_r, rx.pointing_error_rad),
                                      "receiver pointing loss");
    b.path_loss_db = db_from_linear(path_loss(link, geom), "path loss");
    b.atmospheric_db = geom.kind == LinkKind::kUpDown
                           ? db_from_linear(atmospheric_loss(*geom.site, *atmos, link),
                                            "atmospheric loss")
                           : DecibelValue(0.0);
    b.rx_power_dbm = DecibelValue(b.tx_power_dbm.db() + b.tx_efficiency_db.db() +
                                  b.rx_efficiency_db.db() + b.tx_gain_db.db() + b.rx_gain_db.db() +
                                  b.tx_pointing_db.db() + b.rx_pointing_db.db() +
                                  b.path_loss_db.db() + b.atmospheric_db.db());
    b.margin_db = link_margin_db(b.rx_power_dbm, DecibelValue(rx.sensitivity_dbm));
    return b;
}

// Transmit power that yields exactly the target margin; algebraic inversion
// of the budget, no iteration.
inline PowerValue required_tx_power(DecibelValue target_margin_db, const TransmitterSpec& tx,
                                    const ReceiverSpec& rx, const LinkSpec& link,
                                    const LinkGeometry& geom,
                                    const std::optional<AtmosphereSpec>& atmos = std::nullopt) {
    validate(geom);
    const double needed_rx_w =
        watts_from_dbm(DecibelValue(rx.sensitivity_dbm + target_margin_db.db())).watts();
    return PowerValue(needed_rx_w / detail::total_link_gain(tx, rx, link, geom, atmos),
                      "required transmit power");
}

inline DecibelValue achievable_margin(PowerValue tx_power, const TransmitterSpec& tx,
                                      const ReceiverSpec& rx, const LinkSpec& link,
                                      const LinkGeometry& geom,
                                      const std::optional<AtmosphereSpec>& atmos = std::nullopt) {
    return received_power(tx_power, tx, rx, link, geom, atmos).margin_db;
}

}  // namespace fsolink
