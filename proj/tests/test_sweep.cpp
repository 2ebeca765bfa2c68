#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "fsolink/sweep.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using namespace fsolink;

namespace {

Scenario load(const char* name) {
    std::ifstream in(std::string(FSOLINK_REPO_DIR) + "/scenarios/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string cell_text(const Table& table, std::size_t row, std::size_t column) {
    return detail::format_cell(table.rows.at(row).at(column), table.columns.at(column).style);
}

double cell_number(const Table& table, std::size_t row, std::size_t column) {
    return std::get<double>(table.rows.at(row).at(column).value);
}

}  // namespace

TEST_CASE("isl distance sweep reproduces the budget point by point") {
    const Scenario s = load("isl.json");
    const Table table = run_sweep(s, *s.sweep);
    REQUIRE(table.rows.size() == 12);
    REQUIRE(table.columns.size() == 4);
    CHECK(table.columns[0].name == "d_ss_km");
    CHECK(table.columns[3].name == "p_t_w");
    const double direct = required_tx_power(DecibelValue(3.0), s.transmitter_spec(),
                                            s.receiver_spec(), s.link_spec(),
                                            LinkGeometry::inter_satellite(5000.0))
                              .watts();
    CHECK_THAT(cell_number(table, 5, 3), WithinAbs(direct, 1e-15));
    CHECK(cell_text(table, 0, 0) == "1000");
    CHECK(cell_text(table, 0, 1) == "-258.18");
}

TEST_CASE("slant altitude sweep shares one atmospheric column set") {
    const Scenario s = load("default.json");
    const Table table = run_sweep(s, *s.sweep);
    REQUIRE(table.rows.size() == 13);
    REQUIRE(table.columns.size() == 8);
    // The loss columns cannot depend on the altitude axis.
    for (std::size_t row = 1; row < table.rows.size(); ++row) {
        CHECK(cell_number(table, row, 3) == cell_number(table, 0, 3));
        CHECK(cell_number(table, row, 4) == cell_number(table, 0, 4));
        CHECK(cell_number(table, row, 5) == cell_number(table, 0, 5));
    }
    CHECK(cell_text(table, 0, 1) == "451.2");
    CHECK(cell_text(table, 12, 1) == "2079.0");
}

TEST_CASE("elevation sweep carries the traversal column") {
    const Scenario s = load("default.json");
    SweepDef def;
    def.kind = SweepKind::kElevation;
    def.margin_db = 3.0;
    def.altitude_km = 550.0;
    const Table table = run_sweep(s, def);
    REQUIRE(table.rows.size() == 9);
    CHECK(table.columns[2].name == "d_a_km");
    CHECK(cell_text(table, 0, 0) == "10");
    CHECK(cell_text(table, 0, 2) == "109.4");
    CHECK(cell_text(table, 8, 2) == "19.0");

    SweepDef missing = def;
    missing.altitude_km.reset();
    CHECK_THROWS_WITH(run_sweep(s, missing), ContainsSubstring("altitude_km"));
}

TEST_CASE("margin sweep surrounds the cap-limited row") {
    const Scenario s = load("isl.json");
    SweepDef def;
    def.kind = SweepKind::kMarginIsl;
    def.axis = {4000.0, 5500.0};
    def.tx_power_w = 1.0;
    const Table table = run_sweep(s, def);
    REQUIRE(table.rows.size() == 10);
    CHECK(cell_text(table, 0, 1) == "4");
    CHECK(cell_text(table, 1, 1) == "5");
    CHECK(cell_text(table, 2, 1) == "5.6");
    CHECK(cell_text(table, 3, 1) == "6");
    CHECK(cell_text(table, 4, 1) == "7");
    CHECK(cell_text(table, 2, 2) == "-29.9");
    // The cap row demands almost exactly the cap.
    CHECK_THAT(cell_number(table, 2, 4), WithinAbs(1.0, 0.01));
    CHECK(cell_text(table, 7, 1) == "2.9");
    CHECK(cell_text(table, 7, 2) == "-32.6");
}

TEST_CASE("up-down margin sweep centres an integral cap margin") {
    const Scenario s = load("default.json");
    SweepDef def;
    def.kind = SweepKind::kMarginUpDown;
    def.axis = {700.0};
    def.tx_power_w = 1.0;
    const Table table = run_sweep(s, def);
    REQUIRE(table.rows.size() == 5);
    CHECK(cell_text(table, 0, 0) == "700");
    CHECK(cell_text(table, 0, 1) == "1020.1");
    CHECK(cell_text(table, 0, 2) == "15");
    CHECK(cell_text(table, 2, 2) == "17");
    CHECK(cell_text(table, 4, 2) == "19");
}

TEST_CASE("max range table covers both modes") {
    const Scenario up_down = load("default.json");
    SweepDef def;
    def.kind = SweepKind::kMaxRange;
    def.axis = {0.0, 3.0};
    def.tx_power_w = 1.0;
    const Table up_table = run_sweep(up_down, def);
    REQUIRE(up_table.rows.size() == 2);
    CHECK(cell_text(up_table, 0, 0) == "updown");
    CHECK(cell_text(up_table, 0, 3) == "7241");
    CHECK(cell_text(up_table, 1, 3) == "5126");
    CHECK(cell_text(up_table, 1, 4) == "4063");

    const Scenario isl = load("isl.json");
    const Table isl_table = run_sweep(isl, def);
    CHECK(cell_text(isl_table, 0, 0) == "isl");
    CHECK(cell_text(isl_table, 0, 3) == "7655");
    CHECK(cell_text(isl_table, 1, 3) == "5419");
    CHECK(cell_text(isl_table, 1, 4) == "");
}

TEST_CASE("infeasible reach renders as a value") {
    Scenario isl = load("isl.json");
    isl.rx_sensitivity_dbm = 100.0;
    SweepDef def;
    def.kind = SweepKind::kMaxRange;
    def.axis = {3.0};
    def.tx_power_w = 1e-6;
    const Table table = run_sweep(isl, def);
    REQUIRE(table.rows.size() == 1);
    CHECK(cell_text(table, 0, 3) == "infeasible");
}

TEST_CASE("sweeps enforce the block rules") {
    const Scenario isl = load("isl.json");
    SweepDef def;
    def.kind = SweepKind::kSlantAltitude;
    def.margin_db = 3.0;
    CHECK_THROWS_WITH(run_sweep(isl, def), ContainsSubstring("ground"));

    const Scenario full = load("default.json");
    def.kind = SweepKind::kIslDistance;
    CHECK_THROWS_WITH(run_sweep(full, def), ContainsSubstring("omit"));
}

TEST_CASE("explain ledger sums to its printed received power") {
    const Scenario s = load("default.json");
    const auto geom = LinkGeometry::up_down(*s.ground, 600.0, s.earth_model());
    const auto breakdown =
        received_power(PowerValue(1.0), s.transmitter_spec(), s.receiver_spec(), s.link_spec(),
                       geom, s.atmosphere);
    const Table table = explain_table(breakdown, s.rx_sensitivity_dbm);
    REQUIRE(table.rows.size() == 12);

    long long printed_sum_milli = 0;
    long long printed_rx_milli = 0;
    long long printed_sensitivity_milli = 0;
    long long printed_margin_milli = 0;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        const std::string term = cell_text(table, row, 0);
        const std::string value = cell_text(table, row, 1);
        const long long milli = std::llround(std::stod(value) * 1000.0);
        if (term == "rx_power_dbm") {
            printed_rx_milli = milli;
        } else if (term == "sensitivity_dbm") {
            printed_sensitivity_milli = milli;
        } else if (term == "margin_db") {
            printed_margin_milli = milli;
        } else {
            printed_sum_milli += milli;
        }
    }
    CHECK(printed_sum_milli == printed_rx_milli);
    CHECK(printed_rx_milli - printed_sensitivity_milli == printed_margin_milli);
}

TEST_CASE("stock reference tables come out with the expected shapes") {
    const Scenario s = load("default.json");
    const auto tables = reference_tables(s);
    REQUIRE(tables.size() == 6);
    CHECK(tables[0].first == "isl_distance_sweep");
    CHECK(tables[0].second.rows.size() == 12);
    CHECK(tables[1].first == "slant_altitude_sweep");
    CHECK(tables[1].second.rows.size() == 13);
    CHECK(tables[2].first == "elevation_sweep");
    CHECK(tables[2].second.rows.size() == 9);
    CHECK(tables[3].first == "isl_margin_sweep");
    CHECK(tables[3].second.rows.size() == 20);
    CHECK(tables[4].first == "updown_margin_sweep");
    CHECK(tables[4].second.rows.size() == 20);
    CHECK(tables[5].first == "max_range");
    CHECK(tables[5].second.rows.size() == 4);

    const Scenario isl = load("isl.json");
    CHECK_THROWS_AS(reference_tables(isl), config_error);
}
