// Sweep engine: turns a scenario plus a sweep definition into a result table.
// Row evaluation is pure, so output order is always axis order.
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsolink/budget.hpp"
#include "fsolink/scenario.hpp"
#include "fsolink/solver.hpp"
#include "fsolink/table.hpp"

namespace fsolink {

inline constexpr double kDefaultSweepMarginDb = 3.0;
inline constexpr double kDefaultTxPowerCapW = 1.0;
inline constexpr double kDefaultElevationSweepAltitudeKm = 550.0;

namespace detail {

inline constexpr double kIslDistanceAxisKm[] = {1000, 2000, 3000, 4000,  4500, 5000,
                                                5500, 6000, 7000, 8000, 9000, 10000};
inline constexpr double kSlantAltitudeAxisKm[] = {300,  400,  500,  600,  700,  800, 900,
                                                  1000, 1100, 1200, 1300, 1400, 1500};
inline constexpr double kElevationAxisDeg[] = {10, 20, 30, 40, 50, 60, 70, 80, 90};
inline constexpr double kMarginIslAxisKm[] = {4000, 4500, 5000, 5500};
inline constexpr double kMarginUpDownAxisKm[] = {600, 700, 800, 900};
inline constexpr double kMaxRangeAxisDb[] = {0, 3};

}  // namespace detail

// Stock axis for each sweep kind, mirroring the shipped reference tables.
inline std::span<const double> default_sweep_axis(SweepKind kind) {
    switch (kind) {
        case SweepKind::kIslDistance: return detail::kIslDistanceAxisKm;
        case SweepKind::kSlantAltitude: return detail::kSlantAltitudeAxisKm;
        case SweepKind::kElevation: return detail::kElevationAxisDeg;
        case SweepKind::kMarginIsl: return detail::kMarginIslAxisKm;
        case SweepKind::kMarginUpDown: return detail::kMarginUpDownAxisKm;
        case SweepKind::kMaxRange: return detail::kMaxRangeAxisDb;
    }
    throw internal_error("unknown sweep kind");
}

namespace detail {

// Margin rows printed around a power-cap row: the achievable margin rounded
// to 0.1 dB sits at index 2 with two integer margins on either side.
inline std::vector<double> margin_grid(double achievable_db) {
    const double cap_row = std::round(achievable_db * 10.0) / 10.0;
    std::vector<double> margins;
    if (std::abs(cap_row - std::round(cap_row)) < 1e-9) {
        const double center = std::round(cap_row);
        margins = {center - 2, center - 1, center, center + 1, center + 2};
    } else {
        const double below = std::floor(cap_row);
        margins = {below - 1, below, cap_row, below + 1, below + 2};
    }
    return margins;
}

}  // namespace detail

inline Table isl_distance_sweep(const Scenario& s, std::span<const double> distances_km,
                                double margin_db) {
    require_blocks_for_sweep(s, SweepKind::kIslDistance);
    const auto tx = s.transmitter_spec();
    const auto rx = s.receiver_spec();
    const auto link = s.link_spec();
    Table table;
    table.columns = {{"d_ss_km", ColumnStyle::kTrimmed},
                     {"l_ps_db", ColumnStyle::kFixed2},
                     {"p_t_dbm", ColumnStyle::kFixed2},
                     {"p_t_w", ColumnStyle::kWattsEngineering}};
    for (double distance_km : distances_km) {
        const auto geom = LinkGeometry::inter_satellite(distance_km);
        const double loss_db = db_from_linear(path_loss(link, geom)).db();
        const PowerValue tx_power =
            required_tx_power(DecibelValue(margin_db), tx, rx, link, geom);
        table.rows.push_back(
            {distance_km, loss_db, dbm_from_watts(tx_power).db(), tx_power.watts()});
    }
    return table;
}

inline Table slant_altitude_sweep(const Scenario& s, std::span<const double> altitudes_km,
                                  double margin_db) {
    require_blocks_for_sweep(s, SweepKind::kSlantAltitude);
    const auto tx = s.transmitter_spec();
    const auto rx = s.receiver_spec();
    const auto link = s.link_spec();
    const auto atmos = atmospheric_breakdown(*s.ground, *s.atmosphere, link);
    Table table;
    table.columns = {{"h_s_km", ColumnStyle::kTrimmed},  {"d_gs_km", ColumnStyle::kFixed1},
                     {"l_pg_db", ColumnStyle::kFixed2},  {"i_m_db", ColumnStyle::kFixed2},
                     {"i_g_db", ColumnStyle::kFixed2},   {"l_a_db", ColumnStyle::kFixed2},
                     {"p_t_dbm", ColumnStyle::kFixed2},  {"p_t_w", ColumnStyle::kWattsEngineering}};
    for (double altitude_km : altitudes_km) {
        const auto geom = LinkGeometry::up_down(*s.ground, altitude_km, s.earth_model());
        const double loss_db = db_from_linear(path_loss(link, geom)).db();
        const PowerValue tx_power =
            required_tx_power(DecibelValue(margin_db), tx, rx, link, geom, s.atmosphere);
        table.rows.push_back({altitude_km, geom.distance_km, loss_db,
                              db_from_linear(atmos.mie_loss).db(),
                              db_from_linear(atmos.geometric_loss).db(),
                              db_from_linear(atmos.total_loss).db(),
                              dbm_from_watts(tx_power).db(), tx_power.watts()});
    }
    return table;
}

inline Table elevation_sweep(const Scenario& s, std::span<const double> elevations_deg,
                             double sat_altitude_km, double margin_db) {
    require_blocks_for_sweep(s, SweepKind::kElevation);
    const auto tx = s.transmitter_spec();
    const auto rx = s.receiver_spec();
    const auto link = s.link_spec();
    Table table;
    table.columns = {{"theta_e_deg", ColumnStyle::kTrimmed}, {"d_gs_km", ColumnStyle::kFixed1},
                     {"d_a_km", ColumnStyle::kFixed1},       {"l_pg_db", ColumnStyle::kFixed2},
                     {"i_m_db", ColumnStyle::kFixed2},       {"i_g_db", ColumnStyle::kFixed2},
                     {"l_a_db", ColumnStyle::kFixed2},       {"p_t_dbm", ColumnStyle::kFixed2},
                     {"p_t_w", ColumnStyle::kWattsEngineering}};
    for (double elevation_deg : elevations_deg) {
        GroundSite site = *s.ground;
        site.elevation_deg = elevation_deg;
        const auto geom = LinkGeometry::up_down(site, sat_altitude_km, s.earth_model());
        const auto atmos = atmospheric_breakdown(site, *s.atmosphere, link);
        const double loss_db = db_from_linear(path_loss(link, geom)).db();
        const PowerValue tx_power =
            required_tx_power(DecibelValue(margin_db), tx, rx, link, geom, s.atmosphere);
        table.rows.push_back({elevation_deg, geom.distance_km, atmos.path_length_km, loss_db,
                              db_from_linear(atmos.mie_loss).db(),
                              db_from_linear(atmos.geometric_loss).db(),
                              db_from_linear(atmos.total_loss).db(),
                              dbm_from_watts(tx_power).db(), tx_power.watts()});
    }
    return table;
}

namespace detail {

inline void append_margin_rows(Table& table, const Scenario& s, const LinkGeometry& geom,
                               double tx_power_cap_w, bool with_altitude) {
    const auto tx = s.transmitter_spec();
    const auto rx = s.receiver_spec();
    const auto link = s.link_spec();
    const DecibelValue cap_margin = achievable_margin(PowerValue(tx_power_cap_w), tx, rx, link,
                                                      geom, s.atmosphere);
    for (double margin_db : margin_grid(cap_margin.db())) {
        const PowerValue tx_power =
            required_tx_power(DecibelValue(margin_db), tx, rx, link, geom, s.atmosphere);
        std::vector<Cell> row;
        if (with_altitude) {
            row.emplace_back(*geom.sat_altitude_km);
            row.emplace_back(geom.distance_km);
        } else {
            row.emplace_back(geom.distance_km);
        }
        row.emplace_back(margin_db);
        row.emplace_back(rx.sensitivity_dbm + margin_db);
        row.emplace_back(dbm_from_watts(tx_power).db());
        row.emplace_back(tx_power.watts());
        table.rows.push_back(std::move(row));
    }
}

}  // namespace detail

inline Table margin_sweep_isl(const Scenario& s, std::span<const double> distances_km,
                              double tx_power_cap_w) {
    require_blocks_for_sweep(s, SweepKind::kMarginIsl);
    Table table;
    table.columns = {{"d_ss_km", ColumnStyle::kTrimmed},
                     {"lm_db", ColumnStyle::kTrimmed},
                     {"p_r_dbm", ColumnStyle::kFixed1},
                     {"p_t_dbm", ColumnStyle::kFixed2},
                     {"p_t_w", ColumnStyle::kFixed3}};
    for (double distance_km : distances_km) {
        detail::append_margin_rows(table, s, LinkGeometry::inter_satellite(distance_km),
                                   tx_power_cap_w, false);
    }
    return table;
}

inline Table margin_sweep_up_down(const Scenario& s, std::span<const double> altitudes_km,
                                  double tx_power_cap_w) {
    require_blocks_for_sweep(s, SweepKind::kMarginUpDown);
    Table table;
    table.columns = {{"h_s_km", ColumnStyle::kTrimmed},
                     {"d_gs_km", ColumnStyle::kFixed1},
                     {"lm_db", ColumnStyle::kTrimmed},
                     {"p_r_dbm", ColumnStyle::kFixed1},
                     {"p_t_dbm", ColumnStyle::kFixed2},
                     {"p_t_w", ColumnStyle::kFixed3}};
    for (double altitude_km : altitudes_km) {
        detail::append_margin_rows(table, s,
                                   LinkGeometry::up_down(*s.ground, altitude_km, s.earth_model()),
                                   tx_power_cap_w, true);
    }
    return table;
}

// Feasibility rows for one or both link kinds; infeasible floors render as an
// "infeasible" cell rather than an error.
inline Table max_range_table(const Scenario& s, std::span<const double> margin_floors_db,
                             double tx_power_cap_w) {
    const bool up_down = s.ground.has_value();
    Table table;
    table.columns = {{"link", ColumnStyle::kText},
                     {"margin_floor_db", ColumnStyle::kTrimmed},
                     {"tx_power_w", ColumnStyle::kTrimmed},
                     {"max_distance_km", ColumnStyle::kFixed0},
                     {"sat_altitude_km", ColumnStyle::kFixed0}};
    for (double floor_db : margin_floors_db) {
        FeasibilityQuery query{PowerValue(tx_power_cap_w),
                               DecibelValue(floor_db),
                               s.transmitter_spec(),
                               s.receiver_spec(),
                               s.link_spec(),
                               s.ground,
                               s.atmosphere,
                               s.earth_model()};
        if (up_down) {
            const auto reach = max_slant_distance_km(query);
            if (reach) {
                table.rows.push_back({"updown", floor_db, tx_power_cap_w,
                                      reach->slant_distance_km, reach->sat_altitude_km});
            } else {
                table.rows.push_back({"updown", floor_db, tx_power_cap_w, "infeasible", ""});
            }
        } else {
            const auto distance = max_isl_distance_km(query);
            if (distance) {
                table.rows.push_back({"isl", floor_db, tx_power_cap_w, *distance, ""});
            } else {
                table.rows.push_back({"isl", floor_db, tx_power_cap_w, "infeasible", ""});
            }
        }
    }
    return table;
}

// Single-link ledger. Line items print at three decimals and the received
// power row is their exact decimal sum, so the printed column always adds up;
// the unrounded ledger closes to 1e-9 dB by construction.
inline Table explain_table(const BudgetBreakdown& breakdown, double sensitivity_dbm) {
    Table table;
    table.columns = {{"term", ColumnStyle::kText}, {"value_db", ColumnStyle::kFixed3}};
    const auto milli = [](double db) { return std::llround(db * 1000.0); };
    long long sum_milli = 0;
    const auto add_item = [&](const char* label, DecibelValue value) {
        sum_milli += milli(value.db());
        table.rows.push_back({label, value.db()});
    };
    add_item("tx_power_dbm", breakdown.tx_power_dbm);
    add_item("tx_efficiency_db", breakdown.tx_efficiency_db);
    add_item("rx_efficiency_db", breakdown.rx_efficiency_db);
    add_item("tx_gain_db", breakdown.tx_gain_db);
    add_item("rx_gain_db", breakdown.rx_gain_db);
    add_item("tx_pointing_db", breakdown.tx_pointing_db);
    add_item("rx_pointing_db", breakdown.rx_pointing_db);
    add_item("path_loss_db", breakdown.path_loss_db);
    add_item("atmospheric_db", breakdown.atmospheric_db);
    const long long sensitivity_milli = milli(sensitivity_dbm);
    table.rows.push_back({"rx_power_dbm", static_cast<double>(sum_milli) / 1000.0});
    table.rows.push_back({"sensitivity_dbm", sensitivity_dbm});
    table.rows.push_back(
        {"margin_db", static_cast<double>(sum_milli - sensitivity_milli) / 1000.0});
    return table;
}

inline Table run_sweep(const Scenario& s, const SweepDef& def) {
    require_blocks_for_sweep(s, def.kind);
    const std::span<const double> axis =
        def.axis.empty() ? default_sweep_axis(def.kind) : std::span<const double>(def.axis);
    switch (def.kind) {
        case SweepKind::kIslDistance:
            if (!def.margin_db) throw config_error("isl-distance sweep: margin_db required");
            return isl_distance_sweep(s, axis, *def.margin_db);
        case SweepKind::kSlantAltitude:
            if (!def.margin_db) throw config_error("slant-altitude sweep: margin_db required");
            return slant_altitude_sweep(s, axis, *def.margin_db);
        case SweepKind::kElevation:
            if (!def.margin_db) throw config_error("elevation sweep: margin_db required");
            if (!def.altitude_km) throw config_error("elevation sweep: altitude_km required");
            return elevation_sweep(s, axis, *def.altitude_km, *def.margin_db);
        case SweepKind::kMarginIsl:
            if (!def.tx_power_w) throw config_error("margin-isl sweep: tx_power_w required");
            return margin_sweep_isl(s, axis, *def.tx_power_w);
        case SweepKind::kMarginUpDown:
            if (!def.tx_power_w) throw config_error("margin-updown sweep: tx_power_w required");
            return margin_sweep_up_down(s, axis, *def.tx_power_w);
        case SweepKind::kMaxRange:
            if (!def.tx_power_w) throw config_error("max-range sweep: tx_power_w required");
            return max_range_table(s, axis, *def.tx_power_w);
    }
    throw internal_error("unknown sweep kind");
}

// Every stock table from one fully-populated scenario: the inter-satellite
// tables run on a copy with the up-down blocks stripped.
inline std::vector<std::pair<std::string, Table>> reference_tables(const Scenario& s) {
    if (!s.ground || !s.atmosphere) {
        throw config_error("reference tables need a scenario with ground and atmosphere blocks");
    }
    Scenario isl = s;
    isl.ground.reset();
    isl.atmosphere.reset();
    isl.sweep.reset();

    std::vector<std::pair<std::string, Table>> tables;
    tables.emplace_back("isl_distance_sweep",
                        isl_distance_sweep(isl, default_sweep_axis(SweepKind::kIslDistance),
                                           kDefaultSweepMarginDb));
    tables.emplace_back("slant_altitude_sweep",
                        slant_altitude_sweep(s, default_sweep_axis(SweepKind::kSlantAltitude),
                                             kDefaultSweepMarginDb));
    tables.emplace_back("elevation_sweep",
                        elevation_sweep(s, default_sweep_axis(SweepKind::kElevation),
                                        kDefaultElevationSweepAltitudeKm, kDefaultSweepMarginDb));
    tables.emplace_back("isl_margin_sweep",
                        margin_sweep_isl(isl, default_sweep_axis(SweepKind::kMarginIsl),
                                         kDefaultTxPowerCapW));
    tables.emplace_back("updown_margin_sweep",
                        margin_sweep_up_down(s, default_sweep_axis(SweepKind::kMarginUpDown),
                                             kDefaultTxPowerCapW));
    Table reach = max_range_table(isl, default_sweep_axis(SweepKind::kMaxRange),
                                  kDefaultTxPowerCapW);
    Table up_down_reach = max_range_table(s, default_sweep_axis(SweepKind::kMaxRange),
                                          kDefaultTxPowerCapW);
    for (auto& row : up_down_reach.rows) {
        reach.rows.push_back(std::move(row));
    }
    tables.emplace_back("max_range", std::move(reach));
    return tables;
}

}  // namespace fsolink
