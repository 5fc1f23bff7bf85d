#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wifiholo/pipeline.hpp"
#include "wifiholo/scenarios.hpp"

using namespace wifiholo;
using Catch::Approx;

TEST_CASE("scenario catalogue", "[scenarios]") {
    const auto names = scenario_names();
    CHECK(names.size() == 10);
    for (const auto& n : names) {
        const auto s = scenario_by_name(n);
        CHECK(s.name == n);
        CHECK_NOTHROW(validate_config(s.config));
    }
    CHECK_THROWS(scenario_by_name("three_bars"));
}

TEST_CASE("router placements", "[scenarios]") {
    const auto four = scenario_human(4).config.scene.emitters;
    REQUIRE(four.size() == 4);
    CHECK(four[0].position == Point3{0.3, 0.3, 2.0});
    CHECK(four[1].position == Point3{0.3, 1.2, 2.0});
    CHECK(four[2].position == Point3{1.2, 0.3, 2.0});
    CHECK(four[3].position == Point3{1.2, 1.2, 2.0});

    const auto one = scenario_human(1);
    REQUIRE(one.config.scene.emitters.size() == 1);
    CHECK(one.config.scene.emitters[0].position.z - one.truth.target_depth == Approx(1.3));
    REQUIRE(one.config.scene.wall.has_value());
    CHECK(one.config.scene.wall->z_front == 0.2);
    CHECK(one.config.scene.wall->thickness == 0.06);

    CHECK(scenario_background().config.scene.scatterers.empty());
}

TEST_CASE("scenario geometry", "[scenarios]") {
    const auto bars = scenario_two_bars(0.2);
    const auto a = full_aperture(bars.config);
    CHECK(a.nx == 21);
    CHECK(a.ny == 1);
    CHECK(a.dx == 0.05);

    const auto cross = scenario_cross(1);
    const auto c = full_aperture(cross.config);
    CHECK(c.nx == 20);
    CHECK(c.ny == 22);
    const auto d4 = apply_decimation(scenario_cross(4).config, make_hologram(c, {FrequencyBin{}}));
    CHECK(d4.aperture.nx == 5);
    CHECK(d4.aperture.ny == 6);
}

TEST_CASE("two bars 40 cm apart resolve end to end", "[scenarios]") {
    const auto r = run_scenario(scenario_two_bars(0.4));
    CHECK(r.passed());
    REQUIRE(r.crests.size() == 2);
    CHECK(r.crests[1] - r.crests[0] == Approx(0.4).margin(0.05));
}

TEST_CASE("overrides re-derive the scenario", "[scenarios]") {
    const auto s = with_overrides(scenario_two_bars(0.4), {"reconstruction.z=[0.7, 0.8]"});
    CHECK(s.config.reconstruction.z == std::vector<double>{0.7, 0.8});
    CHECK(s.name == "two_bars_40cm");
}
