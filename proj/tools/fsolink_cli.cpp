// Command-line front end: loads a scenario, runs a sweep or feasibility
// query, and writes deterministic CSV/markdown tables.
//
// Exit codes: 0 success, 2 validation error, 1 internal error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fsolink/fsolink.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw fsolink::config_error("cannot open scenario file \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Applies one `block.key=value` override onto the raw JSON document. Bad key
// paths survive here and are rejected by the strict parse that follows.
void apply_override(nlohmann::json& doc, const std::string& assignment) {
    const auto equals = assignment.find('=');
    if (equals == std::string::npos || equals == 0) {
        throw fsolink::config_error("override \"" + assignment + "\" must look like key=value");
    }
    const std::string path = assignment.substr(0, equals);
    const std::string raw_value = assignment.substr(equals + 1);
    nlohmann::json value;
    if (nlohmann::json::accept(raw_value)) {
        value = nlohmann::json::parse(raw_value);
    } else {
        value = raw_value;  // bare strings, e.g. modulation=ook
    }
    nlohmann::json* node = &doc;
    std::size_t begin = 0;
    while (true) {
        const auto dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (key.empty()) {
            throw fsolink::config_error("override key \"" + path + "\" has an empty segment");
        }
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        node = &(*node)[key];
        begin = dot + 1;
    }
}

struct SweepFlags {
    std::vector<double> distances_km;
    std::vector<double> altitudes_km;
    std::vector<double> elevations_deg;
    double margin_db = 0.0;
    bool margin_db_set = false;
    double tx_power_w = 0.0;
    bool tx_power_w_set = false;
    double fixed_altitude_km = 0.0;
    bool fixed_altitude_km_set = false;
    double fixed_elevation_deg = 0.0;
    bool fixed_elevation_deg_set = false;
    double fixed_distance_km = 0.0;
    bool fixed_distance_km_set = false;
};

struct Invocation {
    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string format_name;
    std::string out_path;
    bool paper_tables = false;
    SweepFlags flags;
};

std::vector<double> resolve_axis(const fsolink::Scenario& s, fsolink::SweepKind kind,
                                 const std::vector<double>& flag_axis) {
    if (!flag_axis.empty()) {
        std::vector<double> axis = flag_axis;
        std::sort(axis.begin(), axis.end());
        return axis;
    }
    if (s.sweep && s.sweep->kind == kind && !s.sweep->axis.empty()) {
        return s.sweep->axis;
    }
    const auto stock = fsolink::default_sweep_axis(kind);
    return {stock.begin(), stock.end()};
}

double resolve_margin(const fsolink::Scenario& s, fsolink::SweepKind kind, const SweepFlags& f) {
    if (f.margin_db_set) return f.margin_db;
    if (s.sweep && s.sweep->kind == kind && s.sweep->margin_db) return *s.sweep->margin_db;
    return fsolink::kDefaultSweepMarginDb;
}

double resolve_power_cap(const fsolink::Scenario& s, fsolink::SweepKind kind,
                         const SweepFlags& f) {
    if (f.tx_power_w_set) return f.tx_power_w;
    if (s.sweep && s.sweep->kind == kind && s.sweep->tx_power_w) return *s.sweep->tx_power_w;
    return fsolink::kDefaultTxPowerCapW;
}

fsolink::Scenario scenario_with_elevation(fsolink::Scenario s, const SweepFlags& f) {
    if (f.fixed_elevation_deg_set) {
        if (!s.ground) {
            throw fsolink::config_error("--elevation-deg needs a scenario with a ground block");
        }
        s.ground->elevation_deg = f.fixed_elevation_deg;
        fsolink::validate(*s.ground);
    }
    return s;
}

fsolink::Table build_explain(const fsolink::Scenario& s, const SweepFlags& f,
                             std::vector<std::string>& comment_lines) {
    if (f.margin_db_set == f.tx_power_w_set) {
        throw fsolink::config_error("explain: give exactly one of --margin-db or --tx-power-w");
    }
    const auto tx = s.transmitter_spec();
    const auto rx = s.receiver_spec();
    const auto link = s.link_spec();

    fsolink::LinkGeometry geom;
    if (s.ground) {
        if (f.fixed_altitude_km_set == f.fixed_distance_km_set) {
            throw fsolink::config_error(
                "explain (up-down): give exactly one of --altitude-km or --distance-km");
        }
        geom = f.fixed_altitude_km_set
                   ? fsolink::LinkGeometry::up_down(*s.ground, f.fixed_altitude_km,
                                                    s.earth_model())
                   : fsolink::LinkGeometry::up_down_at_distance(*s.ground, f.fixed_distance_km,
                                                                s.earth_model());
        comment_lines.push_back("link updown distance_km=" +
                                fsolink::format_number(geom.distance_km, fsolink::ColumnStyle::kFixed3) +
                                " sat_altitude_km=" +
                                fsolink::format_number(*geom.sat_altitude_km,
                                                       fsolink::ColumnStyle::kFixed3) +
                                " elevation_deg=" +
                                fsolink::format_number(s.ground->elevation_deg,
                                                       fsolink::ColumnStyle::kTrimmed));
    } else {
        if (!f.fixed_distance_km_set) {
            throw fsolink::config_error("explain (inter-satellite): --distance-km required");
        }
        geom = fsolink::LinkGeometry::inter_satellite(f.fixed_distance_km);
        comment_lines.push_back("link isl distance_km=" +
                                fsolink::format_number(geom.distance_km,
                                                       fsolink::ColumnStyle::kTrimmed));
    }

    fsolink::PowerValue tx_power =
        f.tx_power_w_set
            ? fsolink::PowerValue(f.tx_power_w, "tx_power_w")
            : fsolink::required_tx_power(fsolink::DecibelValue(f.margin_db), tx, rx, link, geom,
                                         s.atmosphere);
    const auto breakdown = fsolink::received_power(tx_power, tx, rx, link, geom, s.atmosphere);
    return fsolink::explain_table(breakdown, rx.sensitivity_dbm);
}

void write_document(const std::string& out_path, const std::string& bytes) {
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw fsolink::config_error("cannot open output file \"" + out_path + "\"");
    }
    out << bytes;
}

int run(const Invocation& inv, const std::string& subcommand) {
    if (inv.scenario_path.empty()) {
        throw fsolink::config_error("--scenario is required");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(inv.scenario_path));
    } catch (const nlohmann::json::parse_error& error) {
        throw fsolink::config_error(error.what());
    }
    for (const auto& assignment : inv.overrides) {
        apply_override(doc, assignment);
    }
    std::vector<std::string> warnings;
    const fsolink::Scenario scenario = fsolink::parse_scenario(doc.dump(), &warnings);
    for (const auto& warning : warnings) {
        std::cerr << "warning: " << warning << "\n";
    }

    fsolink::TableFormat format = scenario.sweep ? scenario.sweep->format
                                                 : fsolink::TableFormat::kCsv;
    if (inv.format_name == "csv") format = fsolink::TableFormat::kCsv;
    if (inv.format_name == "md") format = fsolink::TableFormat::kMarkdown;
    const char* extension = format == fsolink::TableFormat::kCsv ? ".csv" : ".md";

    std::vector<std::string> base_comments;
    base_comments.push_back(std::string("fsolink ") + fsolink::kVersion);
    base_comments.push_back(
        "scenario " + std::filesystem::path(inv.scenario_path).filename().string() +
        " fingerprint " + fsolink::fingerprint_hex(fsolink::scenario_fingerprint(scenario)));
    for (const auto& assignment : inv.overrides) {
        base_comments.push_back("override " + assignment);
    }

    if (inv.paper_tables) {
        auto tables = fsolink::reference_tables(scenario);
        if (!inv.out_path.empty()) {
            std::filesystem::create_directories(inv.out_path);
        }
        std::string combined;
        for (auto& [name, table] : tables) {
            table.comments = base_comments;
            table.comments.push_back("table " + name);
            const std::string bytes = fsolink::render_table(table, format);
            if (inv.out_path.empty()) {
                if (!combined.empty()) combined += "\n";
                combined += bytes;
            } else {
                const auto path = std::filesystem::path(inv.out_path) / (name + extension);
                std::ofstream out(path, std::ios::binary);
                if (!out) {
                    throw fsolink::config_error("cannot open output file \"" + path.string() +
                                                "\"");
                }
                out << bytes;
            }
        }
        if (inv.out_path.empty()) {
            std::cout << combined;
        }
        return 0;
    }

    const SweepFlags& f = inv.flags;
    fsolink::Table table;
    std::vector<std::string> extra_comments;
    if (subcommand == "explain") {
        const auto s = scenario_with_elevation(scenario, f);
        table = build_explain(s, f, extra_comments);
        if (f.margin_db_set) {
            extra_comments.push_back(
                "target margin_db=" +
                fsolink::format_number(f.margin_db, fsolink::ColumnStyle::kTrimmed));
        } else {
            extra_comments.push_back(
                "tx_power_w=" +
                fsolink::format_number(f.tx_power_w, fsolink::ColumnStyle::kTrimmed));
        }
    } else {
        fsolink::SweepDef def;
        const auto s = scenario_with_elevation(scenario, f);
        if (subcommand == "isl-sweep") {
            def.kind = fsolink::SweepKind::kIslDistance;
            def.axis = resolve_axis(s, def.kind, f.distances_km);
            def.margin_db = resolve_margin(s, def.kind, f);
        } else if (subcommand == "slant-sweep") {
            def.kind = fsolink::SweepKind::kSlantAltitude;
            def.axis = resolve_axis(s, def.kind, f.altitudes_km);
            def.margin_db = resolve_margin(s, def.kind, f);
        } else if (subcommand == "elevation-sweep") {
            def.kind = fsolink::SweepKind::kElevation;
            def.axis = resolve_axis(s, def.kind, f.elevations_deg);
            def.margin_db = resolve_margin(s, def.kind, f);
            if (f.fixed_altitude_km_set) {
                def.altitude_km = f.fixed_altitude_km;
            } else if (s.sweep && s.sweep->kind == def.kind && s.sweep->altitude_km) {
                def.altitude_km = *s.sweep->altitude_km;
            } else {
                def.altitude_km = fsolink::kDefaultElevationSweepAltitudeKm;
            }
        } else if (subcommand == "margin-sweep") {
            const bool up_down = s.ground.has_value();
            def.kind = up_down ? fsolink::SweepKind::kMarginUpDown
                               : fsolink::SweepKind::kMarginIsl;
            def.axis = resolve_axis(s, def.kind, up_down ? f.altitudes_km : f.distances_km);
            def.tx_power_w = resolve_power_cap(s, def.kind, f);
        } else if (subcommand == "max-range") {
            def.kind = fsolink::SweepKind::kMaxRange;
            if (f.margin_db_set) {
                def.axis = {f.margin_db};
            } else if (s.sweep && s.sweep->kind == def.kind && !s.sweep->axis.empty()) {
                def.axis = s.sweep->axis;
            } else {
                const auto stock = fsolink::default_sweep_axis(def.kind);
                def.axis.assign(stock.begin(), stock.end());
            }
            def.tx_power_w = resolve_power_cap(s, def.kind, f);
        } else {
            throw fsolink::internal_error("unhandled subcommand " + subcommand);
        }
        table = fsolink::run_sweep(s, def);
        std::string sweep_line = std::string("sweep ") + fsolink::sweep_kind_name(def.kind);
        if (def.margin_db) {
            sweep_line += " margin_db=" +
                          fsolink::format_number(*def.margin_db, fsolink::ColumnStyle::kTrimmed);
        }
        if (def.tx_power_w) {
            sweep_line += " tx_power_w=" +
                          fsolink::format_number(*def.tx_power_w, fsolink::ColumnStyle::kTrimmed);
        }
        if (def.altitude_km) {
            sweep_line += " altitude_km=" +
                          fsolink::format_number(*def.altitude_km, fsolink::ColumnStyle::kTrimmed);
        }
        extra_comments.push_back(sweep_line);
    }
    table.comments = base_comments;
    table.comments.insert(table.comments.end(), extra_comments.begin(), extra_comments.end());
    write_document(inv.out_path, fsolink::render_table(table, format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Invocation inv;
    CLI::App app{"fsolink: link budget tables for free-space optical satellite links"};
    app.require_subcommand(0, 1);
    app.add_option("--scenario", inv.scenario_path, "scenario JSON file");
    app.add_option("--set", inv.overrides, "scenario override key=value (repeatable)");
    app.add_option("--format", inv.format_name, "output format")
        ->check(CLI::IsMember({"csv", "md"}));
    app.add_option("--out", inv.out_path, "output file (directory with --paper-tables)");
    app.add_flag("--paper-tables", inv.paper_tables,
                 "emit every stock reference table from the scenario");

    SweepFlags& f = inv.flags;
    auto* isl = app.add_subcommand("isl-sweep", "transmit power vs inter-satellite distance");
    isl->add_option("--distance-km", f.distances_km, "distance axis, km");
    isl->add_option("--margin-db", f.margin_db, "link margin, dB")
        ->each([&f](const std::string&) { f.margin_db_set = true; });

    auto* slant = app.add_subcommand("slant-sweep", "transmit power vs satellite altitude");
    slant->add_option("--altitude-km", f.altitudes_km, "satellite altitude axis, km");
    slant->add_option("--margin-db", f.margin_db, "link margin, dB")
        ->each([&f](const std::string&) { f.margin_db_set = true; });
    slant->add_option("--elevation-deg", f.fixed_elevation_deg, "ground elevation override")
        ->each([&f](const std::string&) { f.fixed_elevation_deg_set = true; });

    auto* elevation = app.add_subcommand("elevation-sweep", "transmit power vs elevation angle");
    elevation->add_option("--elevation-deg", f.elevations_deg, "elevation axis, degrees");
    elevation->add_option("--altitude-km", f.fixed_altitude_km, "fixed satellite altitude, km")
        ->each([&f](const std::string&) { f.fixed_altitude_km_set = true; });
    elevation->add_option("--margin-db", f.margin_db, "link margin, dB")
        ->each([&f](const std::string&) { f.margin_db_set = true; });

    auto* margin = app.add_subcommand("margin-sweep", "transmit power vs link margin");
    margin->add_option("--distance-km", f.distances_km, "inter-satellite distance axis, km");
    margin->add_option("--altitude-km", f.altitudes_km, "satellite altitude axis, km");
    margin->add_option("--tx-power-w", f.tx_power_w, "transmit power cap, W")
        ->each([&f](const std::string&) { f.tx_power_w_set = true; });
    margin->add_option("--elevation-deg", f.fixed_elevation_deg, "ground elevation override")
        ->each([&f](const std::string&) { f.fixed_elevation_deg_set = true; });

    auto* reach = app.add_subcommand("max-range", "largest feasible link distance");
    reach->add_option("--tx-power-w", f.tx_power_w, "transmit power cap, W")
        ->each([&f](const std::string&) { f.tx_power_w_set = true; });
    reach->add_option("--margin-db", f.margin_db, "margin floor, dB")
        ->each([&f](const std::string&) { f.margin_db_set = true; });
    reach->add_option("--elevation-deg", f.fixed_elevation_deg, "ground elevation override")
        ->each([&f](const std::string&) { f.fixed_elevation_deg_set = true; });

    auto* explain = app.add_subcommand("explain", "single-link budget ledger");
    explain->add_option("--distance-km", f.fixed_distance_km, "link distance, km")
        ->each([&f](const std::string&) { f.fixed_distance_km_set = true; });
    explain->add_option("--altitude-km", f.fixed_altitude_km, "satellite altitude, km")
        ->each([&f](const std::string&) { f.fixed_altitude_km_set = true; });
    explain->add_option("--elevation-deg", f.fixed_elevation_deg, "ground elevation override")
        ->each([&f](const std::string&) { f.fixed_elevation_deg_set = true; });
    explain->add_option("--tx-power-w", f.tx_power_w, "transmit power, W")
        ->each([&f](const std::string&) { f.tx_power_w_set = true; });
    explain->add_option("--margin-db", f.margin_db, "target margin, dB")
        ->each([&f](const std::string&) { f.margin_db_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }

    std::string subcommand;
    for (const auto* sub : app.get_subcommands()) {
        subcommand = sub->get_name();
    }
    try {
        if (inv.paper_tables && !subcommand.empty()) {
            throw fsolink::config_error("--paper-tables does not take a subcommand");
        }
        if (!inv.paper_tables && subcommand.empty()) {
            std::cerr << app.help();
            return 2;
        }
        return run(inv, subcommand);
    } catch (const fsolink::config_error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const fsolink::domain_error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "internal error: " << error.what() << "\n";
        return 1;
    }
}
