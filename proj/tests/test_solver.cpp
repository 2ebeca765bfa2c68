#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fixtures.hpp"
#include "fsolink/solver.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace fsolink;

namespace {

FeasibilityQuery isl_query(double cap_w, double floor_db) {
    return {PowerValue(cap_w),     DecibelValue(floor_db), fixtures::transmitter(),
            fixtures::receiver(),  fixtures::link(),       std::nullopt,
            std::nullopt,          EarthModel{}};
}

FeasibilityQuery up_down_query(double cap_w, double floor_db, double elevation_deg = 40.0) {
    GroundSite site = fixtures::site();
    site.elevation_deg = elevation_deg;
    return {PowerValue(cap_w),    DecibelValue(floor_db), fixtures::transmitter(),
            fixtures::receiver(), fixtures::link(),       site,
            fixtures::atmosphere(), EarthModel{}};
}

double isl_margin_at(double distance_km) {
    return achievable_margin(PowerValue(1.0), fixtures::transmitter(), fixtures::receiver(),
                             fixtures::link(), LinkGeometry::inter_satellite(distance_km))
        .db();
}

}  // namespace

TEST_CASE("bisect finds roots of monotone functions") {
    CHECK_THAT(bisect([](double x) { return x - 2.0; }, 0.0, 10.0), WithinAbs(2.0, 1e-8));
    CHECK_THAT(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0),
               WithinAbs(1.41421356, 1e-6));
    CHECK(bisect([](double x) { return x; }, 0.0, 5.0) == 0.0);
    CHECK_THROWS_AS(bisect([](double x) { return x + 10.0; }, 0.0, 5.0), domain_error);
    CHECK_THROWS_AS(bisect([](double x) { return x; }, 5.0, 1.0), domain_error);
}

TEST_CASE("maximum inter-satellite distance") {
    const auto at_3db = max_isl_distance_km(isl_query(1.0, 3.0));
    REQUIRE(at_3db.has_value());
    CHECK_THAT(*at_3db, WithinRel(5419.23512319442428, 1e-9));
    CHECK_THAT(*at_3db, WithinAbs(5419.0, 5.0));

    const auto at_0db = max_isl_distance_km(isl_query(1.0, 0.0));
    REQUIRE(at_0db.has_value());
    CHECK_THAT(*at_0db, WithinRel(7654.87307465044149, 1e-9));
    CHECK_THAT(*at_0db, WithinAbs(7654.0, 5.0));

    // The defining equation holds at the returned distance.
    CHECK_THAT(isl_margin_at(*at_3db), WithinAbs(3.0, 1e-9));
}

TEST_CASE("maximum slant distance and altitude") {
    const auto at_3db = max_slant_distance_km(up_down_query(1.0, 3.0));
    REQUIRE(at_3db.has_value());
    CHECK_THAT(at_3db->slant_distance_km, WithinRel(5126.25876138329453, 1e-9));
    CHECK_THAT(at_3db->sat_altitude_km, WithinRel(4062.73016742338519, 1e-9));
    CHECK_THAT(at_3db->slant_distance_km, WithinAbs(5125.0, 5.0));
    CHECK_THAT(at_3db->sat_altitude_km, WithinAbs(4062.0, 5.0));

    const auto at_0db = max_slant_distance_km(up_down_query(1.0, 0.0));
    REQUIRE(at_0db.has_value());
    CHECK_THAT(at_0db->slant_distance_km, WithinAbs(7240.0, 5.0));
    CHECK_THAT(at_0db->sat_altitude_km, WithinAbs(5970.0, 5.0));

    // A higher elevation sees less atmosphere, so the link stretches further.
    const auto zenith = max_slant_distance_km(up_down_query(1.0, 3.0, 90.0));
    REQUIRE(zenith.has_value());
    CHECK(zenith->slant_distance_km > at_3db->slant_distance_km);
}

TEST_CASE("closed form agrees with the bisection oracle") {
    for (double floor_db : {0.0, 1.5, 3.0, 6.0}) {
        const auto closed_form = max_isl_distance_km(isl_query(1.0, floor_db));
        REQUIRE(closed_form.has_value());
        const double via_bisection = bisect(
            [&](double d) { return isl_margin_at(d) - floor_db; }, 100.0, 50000.0, 1e-12);
        CHECK_THAT(*closed_form, WithinAbs(via_bisection, 1e-3));
    }
    const auto up_down = max_slant_distance_km(up_down_query(1.0, 3.0));
    REQUIRE(up_down.has_value());
    const double via_bisection = bisect(
        [&](double d) {
            return achievable_margin(PowerValue(1.0), fixtures::transmitter(),
                                     fixtures::receiver(), fixtures::link(),
                                     LinkGeometry::up_down_at_distance(fixtures::site(), d),
                                     fixtures::atmosphere())
                       .db() -
                   3.0;
        },
        100.0, 50000.0, 1e-12);
    CHECK_THAT(up_down->slant_distance_km, WithinAbs(via_bisection, 1e-3));
}

TEST_CASE("returned distance sits on the feasibility boundary") {
    const auto distance = max_isl_distance_km(isl_query(1.0, 3.0));
    REQUIRE(distance.has_value());
    CHECK(isl_margin_at(*distance) >= 3.0 - 1e-9);
    CHECK(isl_margin_at(*distance + 1.0) < 3.0);
}

TEST_CASE("reach shrinks with the floor and grows with the cap") {
    double previous = 1e18;
    for (double floor_db : {-3.0, 0.0, 3.0, 6.0, 9.0}) {
        const auto distance = max_isl_distance_km(isl_query(1.0, floor_db));
        REQUIRE(distance.has_value());
        CHECK(*distance < previous);
        previous = *distance;
    }
    previous = 0.0;
    for (double cap_w : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto distance = max_isl_distance_km(isl_query(cap_w, 3.0));
        REQUIRE(distance.has_value());
        CHECK(*distance > previous);
        previous = *distance;
    }
}

TEST_CASE("unreachable margin floor reports infeasibility as a value") {
    // A required received power beyond what the cap and terminal gains can
    // deliver would need spreading gain rather than loss: no distance works.
    FeasibilityQuery impossible = isl_query(1e-6, 3.0);
    impossible.rx.sensitivity_dbm = 200.0;
    CHECK_FALSE(max_isl_distance_km(impossible).has_value());

    FeasibilityQuery impossible_up = up_down_query(1e-6, 3.0);
    impossible_up.rx.sensitivity_dbm = 200.0;
    CHECK_FALSE(max_slant_distance_km(impossible_up).has_value());
}

TEST_CASE("feasibility queries validate their block pairing") {
    FeasibilityQuery mixed = isl_query(1.0, 3.0);
    mixed.site = fixtures::site();
    CHECK_THROWS_AS(max_isl_distance_km(mixed), config_error);
    FeasibilityQuery missing = up_down_query(1.0, 3.0);
    missing.atmosphere.reset();
    CHECK_THROWS_AS(max_slant_distance_km(missing), config_error);
}
