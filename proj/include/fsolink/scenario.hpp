// Declarative scenario files. A scenario is one strict JSON document; every
// numeric key carries its unit in the name, and values are stored here in
// file units. Conversion to SI specs happens only in the *_spec() accessors,
// so a parse/serialize round trip reproduces the document exactly.
#pragma once

#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fsolink/atmosphere.hpp"
#include "fsolink/geometry.hpp"
#include "fsolink/optics.hpp"
#include "fsolink/table.hpp"

namespace fsolink {

enum class SweepKind {
    kIslDistance,   // axis: inter-satellite distances, km
    kSlantAltitude, // axis: satellite altitudes, km
    kElevation,     // axis: elevations, degrees; fixed satellite altitude
    kMarginIsl,     // axis: inter-satellite distances, km; fixed power cap
    kMarginUpDown,  // axis: satellite altitudes, km; fixed power cap
    kMaxRange,      // axis: margin floors, dB; fixed power cap
};

inline const char* sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::kIslDistance: return "isl-distance";
        case SweepKind::kSlantAltitude: return "slant-altitude";
        case SweepKind::kElevation: return "elevation";
        case SweepKind::kMarginIsl: return "margin-isl";
        case SweepKind::kMarginUpDown: return "margin-updown";
        case SweepKind::kMaxRange: return "max-range";
    }
    throw internal_error("unknown sweep kind");
}

inline std::optional<SweepKind> sweep_kind_from_name(std::string_view name) {
    for (SweepKind kind :
         {SweepKind::kIslDistance, SweepKind::kSlantAltitude, SweepKind::kElevation,
          SweepKind::kMarginIsl, SweepKind::kMarginUpDown, SweepKind::kMaxRange}) {
        if (name == sweep_kind_name(kind)) return kind;
    }
    return std::nullopt;
}

inline bool sweep_kind_is_up_down(SweepKind kind) {
    return kind == SweepKind::kSlantAltitude || kind == SweepKind::kElevation ||
           kind == SweepKind::kMarginUpDown;
}

inline bool sweep_kind_is_inter_satellite(SweepKind kind) {
    return kind == SweepKind::kIslDistance || kind == SweepKind::kMarginIsl;
}

struct SweepDef {
    SweepKind kind = SweepKind::kIslDistance;
    std::vector<double> axis;
    std::optional<double> margin_db;    // power sweeps
    std::optional<double> tx_power_w;   // margin sweeps and max-range
    std::optional<double> altitude_km;  // fixed satellite altitude for elevation sweeps
    TableFormat format = TableFormat::kCsv;
};

struct Scenario {
    // link block
    double wavelength_nm = 0.0;
    double data_rate_gbps = 0.0;
    double bit_error_rate = 0.0;
    std::string modulation = "ook";
    // transmitter block
    double tx_optics_efficiency = 0.0;
    double tx_divergence_urad = 0.0;
    double tx_pointing_error_urad = 0.0;
    // receiver block
    double rx_optics_efficiency = 0.0;
    double rx_telescope_diameter_mm = 0.0;
    double rx_pointing_error_urad = 0.0;
    double rx_sensitivity_dbm = 0.0;
    // optional up-down blocks; always present or absent together
    std::optional<GroundSite> ground;
    std::optional<AtmosphereSpec> atmosphere;
    // only field with a built-in default
    double earth_radius_km = 6378.1;
    std::optional<SweepDef> sweep;

    LinkSpec link_spec() const {
        return {wavelength_nm * 1e-9, data_rate_gbps, bit_error_rate, Modulation::kOnOffKeying};
    }
    TransmitterSpec transmitter_spec() const {
        return {tx_optics_efficiency, tx_divergence_urad * 1e-6, tx_pointing_error_urad * 1e-6};
    }
    ReceiverSpec receiver_spec() const {
        return {rx_optics_efficiency, rx_telescope_diameter_mm * 1e-3,
                rx_pointing_error_urad * 1e-6, rx_sensitivity_dbm};
    }
    EarthModel earth_model() const { return {earth_radius_km}; }
};

namespace detail {

using scenario_json = nlohmann::json;

inline void check_keys(const scenario_json& obj, const std::string& block,
                       std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            std::string path = block.empty() ? item.key() : block + "." + item.key();
            std::string msg = "unknown key \"" + path + "\"; allowed keys:";
            for (const char* key : allowed) {
                msg += " ";
                msg += key;
            }
            throw config_error(msg);
        }
    }
}

inline const scenario_json& object_field(const scenario_json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw config_error(std::string("missing block \"") + key + "\"");
    }
    const scenario_json& value = doc.at(key);
    if (!value.is_object()) {
        throw config_error(std::string("block \"") + key + "\" must be an object");
    }
    return value;
}

inline double number_field(const scenario_json& obj, const std::string& block, const char* key) {
    if (!obj.contains(key)) {
        throw config_error("missing key \"" + block + "." + key + "\"");
    }
    const scenario_json& value = obj.at(key);
    if (!value.is_number()) {
        throw config_error("key \"" + block + "." + key + "\" must be a number");
    }
    return value.get<double>();
}

inline std::string string_field(const scenario_json& obj, const std::string& block,
                                const char* key) {
    if (!obj.contains(key)) {
        throw config_error("missing key \"" + block + "." + key + "\"");
    }
    const scenario_json& value = obj.at(key);
    if (!value.is_string()) {
        throw config_error("key \"" + block + "." + key + "\" must be a string");
    }
    return value.get<std::string>();
}

inline std::vector<double> parse_axis(const scenario_json& node) {
    std::vector<double> axis;
    if (node.is_array()) {
        for (const auto& element : node) {
            if (!element.is_number()) {
                throw config_error("sweep.axis entries must be numbers");
            }
            axis.push_back(element.get<double>());
        }
    } else if (node.is_object()) {
        check_keys(node, "sweep.axis", {"start", "stop", "step"});
        const double start = number_field(node, "sweep.axis", "start");
        const double stop = number_field(node, "sweep.axis", "stop");
        const double step = number_field(node, "sweep.axis", "step");
        if (step <= 0.0) {
            throw config_error("sweep.axis.step must be > 0");
        }
        if (stop < start) {
            throw config_error("sweep.axis.stop must be >= start");
        }
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
        for (long long i = 0; i <= count; ++i) {
            axis.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        throw config_error("sweep.axis must be an array or a {start, stop, step} object");
    }
    if (axis.empty()) {
        throw config_error("sweep.axis must be non-empty");
    }
    for (std::size_t i = 0; i < axis.size(); ++i) {
        require_finite(axis[i], "sweep.axis value");
        if (i > 0 && axis[i] <= axis[i - 1]) {
            throw config_error("sweep.axis must be strictly increasing");
        }
    }
    return axis;
}

inline SweepDef parse_sweep(const scenario_json& obj) {
    check_keys(obj, "sweep", {"kind", "axis", "margin_db", "tx_power_w", "altitude_km", "format"});
    SweepDef def;
    const std::string kind_name = string_field(obj, "sweep", "kind");
    const auto kind = sweep_kind_from_name(kind_name);
    if (!kind) {
        throw config_error("sweep.kind \"" + kind_name +
                           "\" is not one of: isl-distance, slant-altitude, elevation, "
                           "margin-isl, margin-updown, max-range");
    }
    def.kind = *kind;
    if (!obj.contains("axis")) {
        throw config_error("missing key \"sweep.axis\"");
    }
    def.axis = parse_axis(obj.at("axis"));
    if (obj.contains("margin_db")) {
        def.margin_db = number_field(obj, "sweep", "margin_db");
    }
    if (obj.contains("tx_power_w")) {
        const double cap = number_field(obj, "sweep", "tx_power_w");
        if (cap <= 0.0) {
            throw config_error("sweep.tx_power_w must be > 0");
        }
        def.tx_power_w = cap;
    }
    if (obj.contains("altitude_km")) {
        def.altitude_km = number_field(obj, "sweep", "altitude_km");
    }
    if (obj.contains("format")) {
        const std::string format = string_field(obj, "sweep", "format");
        if (format == "csv") {
            def.format = TableFormat::kCsv;
        } else if (format == "md") {
            def.format = TableFormat::kMarkdown;
        } else {
            throw config_error("sweep.format must be \"csv\" or \"md\"");
        }
    }
    return def;
}

}  // namespace detail

// Enforces the block rules a sweep kind implies: up-down sweeps need ground
// and atmosphere; inter-satellite sweeps must not have them; max-range runs
// in whichever mode the blocks select.
inline void require_blocks_for_sweep(const Scenario& scenario, SweepKind kind) {
    if (sweep_kind_is_up_down(kind)) {
        if (!scenario.atmosphere) {
            throw config_error(std::string(sweep_kind_name(kind)) +
                               " sweep: atmosphere block required");
        }
        if (!scenario.ground) {
            throw config_error(std::string(sweep_kind_name(kind)) +
                               " sweep: ground block required");
        }
    }
    if (sweep_kind_is_inter_satellite(kind) && (scenario.ground || scenario.atmosphere)) {
        throw config_error(std::string(sweep_kind_name(kind)) +
                           " sweep: scenario must omit the ground and atmosphere blocks");
    }
}

inline Scenario parse_scenario(const std::string& text,
                               std::vector<std::string>* warnings = nullptr) {
    detail::scenario_json doc;
    try {
        doc = detail::scenario_json::parse(text);
    } catch (const detail::scenario_json::parse_error& error) {
        throw config_error(error.what());
    }
    if (!doc.is_object()) {
        throw config_error("scenario document must be a JSON object");
    }
    detail::check_keys(doc, "",
                       {"link", "transmitter", "receiver", "ground", "atmosphere", "earth",
                        "sweep"});

    Scenario s;
    const auto& link = detail::object_field(doc, "link");
    detail::check_keys(link, "link",
                       {"wavelength_nm", "data_rate_gbps", "bit_error_rate", "modulation"});
    s.wavelength_nm = detail::number_field(link, "link", "wavelength_nm");
    s.data_rate_gbps = detail::number_field(link, "link", "data_rate_gbps");
    s.bit_error_rate = detail::number_field(link, "link", "bit_error_rate");
    s.modulation = detail::string_field(link, "link", "modulation");
    if (s.modulation != "ook") {
        throw config_error("link.modulation: only \"ook\" is supported");
    }

    const auto& transmitter = detail::object_field(doc, "transmitter");
    detail::check_keys(transmitter, "transmitter",
                       {"optics_efficiency", "divergence_urad", "pointing_error_urad"});
    s.tx_optics_efficiency = detail::number_field(transmitter, "transmitter", "optics_efficiency");
    s.tx_divergence_urad = detail::number_field(transmitter, "transmitter", "divergence_urad");
    s.tx_pointing_error_urad =
        detail::number_field(transmitter, "transmitter", "pointing_error_urad");

    const auto& receiver = detail::object_field(doc, "receiver");
    detail::check_keys(receiver, "receiver",
                       {"optics_efficiency", "telescope_diameter_mm", "pointing_error_urad",
                        "sensitivity_dbm"});
    s.rx_optics_efficiency = detail::number_field(receiver, "receiver", "optics_efficiency");
    s.rx_telescope_diameter_mm =
        detail::number_field(receiver, "receiver", "telescope_diameter_mm");
    s.rx_pointing_error_urad = detail::number_field(receiver, "receiver", "pointing_error_urad");
    s.rx_sensitivity_dbm = detail::number_field(receiver, "receiver", "sensitivity_dbm");

    if (doc.contains("ground")) {
        const auto& ground = detail::object_field(doc, "ground");
        detail::check_keys(ground, "ground", {"altitude_km", "elevation_deg"});
        s.ground = GroundSite{detail::number_field(ground, "ground", "altitude_km"),
                              detail::number_field(ground, "ground", "elevation_deg")};
    }
    if (doc.contains("atmosphere")) {
        const auto& atmosphere = detail::object_field(doc, "atmosphere");
        detail::check_keys(atmosphere, "atmosphere",
                           {"liquid_water_content_g_per_m3", "cloud_number_concentration_per_cm3",
                            "particle_size_coefficient", "troposphere_height_km"});
        s.atmosphere = AtmosphereSpec{
            detail::number_field(atmosphere, "atmosphere", "liquid_water_content_g_per_m3"),
            detail::number_field(atmosphere, "atmosphere", "cloud_number_concentration_per_cm3"),
            detail::number_field(atmosphere, "atmosphere", "particle_size_coefficient"),
            detail::number_field(atmosphere, "atmosphere", "troposphere_height_km")};
    }
    if (s.ground.has_value() != s.atmosphere.has_value()) {
        throw config_error("ground and atmosphere blocks must be provided together");
    }

    if (doc.contains("earth")) {
        const auto& earth = detail::object_field(doc, "earth");
        detail::check_keys(earth, "earth", {"radius_km"});
        s.earth_radius_km = detail::number_field(earth, "earth", "radius_km");
    }

    if (doc.contains("sweep")) {
        s.sweep = detail::parse_sweep(detail::object_field(doc, "sweep"));
    }

    // Semantic validation through the spec validators, so messages name the
    // violated invariant.
    try {
        validate(s.link_spec());
        validate(s.transmitter_spec());
        validate(s.receiver_spec());
        validate(s.earth_model());
        if (s.ground) validate(*s.ground);
        if (s.atmosphere) validate(*s.atmosphere);
    } catch (const domain_error& error) {
        throw config_error(std::string("invalid scenario: ") + error.what());
    }
    if (s.sweep) {
        require_blocks_for_sweep(s, s.sweep->kind);
    }

    if (warnings && s.atmosphere && !mie_wavelength_in_band(s.wavelength_nm * 1e-3)) {
        warnings->push_back("wavelength " + detail::describe(s.wavelength_nm) +
                            " nm is outside the 500-2500 nm band where the extinction "
                            "polynomial is trusted");
    }
    return s;
}

inline std::string serialize_scenario(const Scenario& s) {
    detail::scenario_json doc;
    doc["link"] = {{"wavelength_nm", s.wavelength_nm},
                   {"data_rate_gbps", s.data_rate_gbps},
                   {"bit_error_rate", s.bit_error_rate},
                   {"modulation", s.modulation}};
    doc["transmitter"] = {{"optics_efficiency", s.tx_optics_efficiency},
                          {"divergence_urad", s.tx_divergence_urad},
                          {"pointing_error_urad", s.tx_pointing_error_urad}};
    doc["receiver"] = {{"optics_efficiency", s.rx_optics_efficiency},
                       {"telescope_diameter_mm", s.rx_telescope_diameter_mm},
                       {"pointing_error_urad", s.rx_pointing_error_urad},
                       {"sensitivity_dbm", s.rx_sensitivity_dbm}};
    if (s.ground) {
        doc["ground"] = {{"altitude_km", s.ground->altitude_km},
                         {"elevation_deg", s.ground->elevation_deg}};
    }
    if (s.atmosphere) {
        doc["atmosphere"] = {
            {"liquid_water_content_g_per_m3", s.atmosphere->liquid_water_content_g_per_m3},
            {"cloud_number_concentration_per_cm3",
             s.atmosphere->cloud_number_concentration_per_cm3},
            {"particle_size_coefficient", s.atmosphere->particle_size_coefficient},
            {"troposphere_height_km", s.atmosphere->troposphere_height_km}};
    }
    doc["earth"] = {{"radius_km", s.earth_radius_km}};
    if (s.sweep) {
        detail::scenario_json sweep;
        sweep["kind"] = sweep_kind_name(s.sweep->kind);
        sweep["axis"] = s.sweep->axis;
        if (s.sweep->margin_db) sweep["margin_db"] = *s.sweep->margin_db;
        if (s.sweep->tx_power_w) sweep["tx_power_w"] = *s.sweep->tx_power_w;
        if (s.sweep->altitude_km) sweep["altitude_km"] = *s.sweep->altitude_km;
        sweep["format"] = s.sweep->format == TableFormat::kCsv ? "csv" : "md";
        doc["sweep"] = sweep;
    }
    return doc.dump(2) + "\n";
}

// FNV-1a over the canonical serialization; stable across platforms, used to
// stamp rendered tables with the inputs that produced them.
inline std::uint64_t scenario_fingerprint(const Scenario& s) {
    const std::string bytes = serialize_scenario(s);
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

inline std::string fingerprint_hex(std::uint64_t hash) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace fsolink
