#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "fixtures.hpp"
#include "fsolink/optics.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace fsolink;

TEST_CASE("transmitter gain") {
    CHECK_THAT(transmitter_gain(fixtures::transmitter()), WithinRel(7.111111111111111e10, 1e-12));
    CHECK_THAT(db_from_linear(transmitter_gain(fixtures::transmitter())).db(),
               WithinAbs(108.51937464544562, 1e-9));
    CHECK_THAT(transmitter_gain({1.0, 4.0, 0.0}), WithinRel(1.0, 1e-12));
    CHECK_THAT(transmitter_gain({0.8, 30e-6, 1e-6}), WithinRel(1.7777777777777778e10, 1e-12));
}

TEST_CASE("receiver gain") {
    CHECK_THAT(receiver_gain(fixtures::receiver(), fixtures::link()),
               WithinRel(2.6291558029957084e10, 1e-12));
    CHECK_THAT(db_from_linear(receiver_gain(fixtures::receiver(), fixtures::link())).db(),
               WithinAbs(104.19816323031571, 1e-9));
    ReceiverSpec unit = fixtures::receiver();
    unit.telescope_diameter_m = fixtures::link().wavelength_m / std::numbers::pi;
    CHECK_THAT(receiver_gain(unit, fixtures::link()), WithinRel(1.0, 1e-12));
    ReceiverSpec doubled = fixtures::receiver();
    doubled.telescope_diameter_m = 0.16;
    CHECK_THAT(receiver_gain(doubled, fixtures::link()), WithinRel(1.0516623211982834e11, 1e-12));
}

TEST_CASE("gain scaling identities") {
    // Halving the divergence quadruples transmitter gain; doubling the
    // telescope diameter quadruples receiver gain.
    TransmitterSpec narrow = fixtures::transmitter();
    narrow.divergence_full_angle_rad /= 2.0;
    CHECK_THAT(transmitter_gain(narrow), WithinRel(4.0 * transmitter_gain(fixtures::transmitter()), 1e-12));
    ReceiverSpec doubled = fixtures::receiver();
    doubled.telescope_diameter_m *= 2.0;
    CHECK_THAT(receiver_gain(doubled, fixtures::link()),
               WithinRel(4.0 * receiver_gain(fixtures::receiver(), fixtures::link()), 1e-12));
}

TEST_CASE("pointing loss") {
    CHECK(pointing_loss(7.1e10, 0.0) == 1.0);
    CHECK_THAT(pointing_loss(7.111111111111111e10, 1e-6), WithinRel(0.93135840211135, 1e-9));
    CHECK_THAT(db_from_linear(pointing_loss(7.111111111111111e10, 1e-6)).db(),
               WithinAbs(-0.30883163157564, 1e-9));
    CHECK_THAT(pointing_loss(2.6291558029957084e10, 1e-6), WithinRel(0.97405105579768, 1e-9));
    CHECK_THAT(db_from_linear(pointing_loss(2.6291558029957084e10, 1e-6)).db(),
               WithinAbs(-0.11418278573049, 1e-9));
}

TEST_CASE("pointing loss stays in (0, 1] and decreases in error and gain") {
    fixtures::Lcg rng(13);
    for (int i = 0; i < 300; ++i) {
        const double gain = std::pow(10.0, 6.0 + rng.next() * 6.0);
        const double error = rng.next() * 1e-5;
        const double loss = pointing_loss(gain, error);
        CHECK(loss > 0.0);
        CHECK(loss <= 1.0);
        CHECK(pointing_loss(gain, error + 1e-6) < loss);
        CHECK(pointing_loss(gain * 2.0, error + 1e-9) < pointing_loss(gain, error + 1e-9));
    }
}

TEST_CASE("static terminal gain for the reference terminals") {
    const DecibelValue total =
        static_gain_db(fixtures::transmitter(), fixtures::receiver(), fixtures::link());
    CHECK_THAT(total.db(), WithinAbs(210.35632319829407, 1e-9));
    CHECK_THAT(total.db(), WithinAbs(210.36, 0.01));
}

TEST_CASE("static gain degenerates to the bare gains") {
    TransmitterSpec tx{1.0, 15e-6, 0.0};
    ReceiverSpec rx{1.0, 0.08, 0.0, -35.5};
    const double expected =
        db_from_linear(transmitter_gain(tx)).db() + db_from_linear(receiver_gain(rx, fixtures::link())).db();
    CHECK_THAT(static_gain_db(tx, rx, fixtures::link()).db(), WithinAbs(expected, 1e-9));

    TransmitterSpec unit_tx{1.0, 4.0, 0.0};
    ReceiverSpec unit_rx{1.0, fixtures::link().wavelength_m / std::numbers::pi, 0.0, -35.5};
    CHECK_THAT(static_gain_db(unit_tx, unit_rx, fixtures::link()).db(), WithinAbs(0.0, 1e-9));
}

TEST_CASE("static gain is symmetric in the efficiency split") {
    TransmitterSpec tx = fixtures::transmitter();
    ReceiverSpec rx = fixtures::receiver();
    tx.optics_efficiency = 0.9;
    rx.optics_efficiency = 0.5;
    const double one_way = static_gain_db(tx, rx, fixtures::link()).db();
    tx.optics_efficiency = 0.5;
    rx.optics_efficiency = 0.9;
    CHECK_THAT(static_gain_db(tx, rx, fixtures::link()).db(), WithinAbs(one_way, 1e-9));
}

TEST_CASE("terminal validation") {
    CHECK_THROWS_AS(transmitter_gain({0.0, 15e-6, 0.0}), domain_error);
    CHECK_THROWS_AS(transmitter_gain({1.2, 15e-6, 0.0}), domain_error);
    CHECK_THROWS_AS(transmitter_gain({0.8, 0.0, 0.0}), domain_error);
    CHECK_THROWS_AS(transmitter_gain({0.8, 15e-6, -1e-6}), domain_error);
    CHECK_THROWS_AS(receiver_gain({0.8, 0.0, 0.0, -35.5}, fixtures::link()), domain_error);
    LinkSpec bad_link = fixtures::link();
    bad_link.wavelength_m = 0.0;
    CHECK_THROWS_AS(receiver_gain(fixtures::receiver(), bad_link), domain_error);
    CHECK_THROWS_AS(pointing_loss(0.0, 1e-6), domain_error);
    CHECK_THROWS_AS(pointing_loss(1e10, -1.0), domain_error);
}
