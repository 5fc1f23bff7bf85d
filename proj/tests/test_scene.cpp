#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "wifiholo/scene.hpp"

using namespace wifiholo;
using Catch::Approx;

namespace {

ScanAperture grid(double sx, double sy, double d) {
    return make_aperture({0.0, 0.0, 0.0}, sx, sy, d, d, default_reference({0.0, 0.0, 0.0}));
}

// Positions x = i*d with x <= span, counted by walking.
int count_positions(double span, double d) {
    int n = 0;
    while (n * d <= span + 1e-9 * d) ++n;
    return n;
}

}  // namespace

TEST_CASE("aperture node counts", "[scene]") {
    auto line = grid(1.0, 0.0, 0.05);
    CHECK(line.nx == 21);
    CHECK(line.ny == 1);

    auto plane = grid(1.17, 1.30, 0.0615);
    CHECK(plane.nx == count_positions(1.17, 0.0615));
    CHECK(plane.ny == count_positions(1.30, 0.0615));
    CHECK(plane.nx == 20);
    CHECK(plane.ny == 22);

    auto single = grid(0.0, 0.0, 0.05);
    CHECK(single.size() == 1);
}

TEST_CASE("S-order walk", "[scene]") {
    auto a = grid(0.05, 0.05, 0.05);
    auto p = s_order_positions(a);
    REQUIRE(p.size() == 4);
    CHECK(p[0].index == GridIndex{0, 0});
    CHECK(p[1].index == GridIndex{1, 0});
    CHECK(p[2].index == GridIndex{1, 1});
    CHECK(p[3].index == GridIndex{0, 1});

    auto b = grid(0.1, 0.05, 0.05);
    auto q = s_order_positions(b);
    REQUIRE(q.size() == 6);
    const int expect_i[] = {0, 1, 2, 2, 1, 0};
    for (int n = 0; n < 6; ++n) {
        CHECK(q[n].index.i == expect_i[n]);
        CHECK(q[n].index.j == n / 3);
        CHECK(q[n].position == b.node(q[n].index.i, q[n].index.j));
    }

    auto row = grid(1.0, 0.0, 0.05);
    auto r = s_order_positions(row);
    for (std::size_t n = 1; n < r.size(); ++n) CHECK(r[n].position.x > r[n - 1].position.x);
}

TEST_CASE("S-order visits every node once", "[scene]") {
    auto a = grid(1.17, 1.30, 0.0615);
    std::set<std::pair<int, int>> seen;
    auto p = s_order_positions(a);
    for (std::size_t n = 0; n < p.size(); ++n) {
        seen.insert({p[n].index.i, p[n].index.j});
        if (n > 0) {
            const int step = std::abs(p[n].index.i - p[n - 1].index.i) + std::abs(p[n].index.j - p[n - 1].index.j);
            CHECK(step == 1);
        }
    }
    CHECK(seen.size() == a.size());
}

TEST_CASE("half-wavelength spacing", "[scene]") {
    CHECK(nyquist_spacing(2.4372e9) == Approx(0.06151).margin(1e-5));
    CHECK(nyquist_spacing(2.4372e9) == Approx(0.0615035).margin(1e-7));
    CHECK(nyquist_spacing(2.42e9) == Approx(0.06194).margin(5e-6));
    CHECK(nyquist_spacing(4.8744e9) == Approx(0.03075).margin(5e-6));
    for (double f : {2.4e9, 2.4372e9, 2.5e9, 5.8e9})
        CHECK(nyquist_spacing(f) * f == Approx(kSpeedOfLight / 2.0).epsilon(1e-12));
    CHECK_THROWS(nyquist_spacing(0.0));
}

TEST_CASE("aperture decimation", "[scene]") {
    auto a = grid(1.17, 1.30, 0.0615);
    CHECK(decimate_aperture(a, 1) == a);

    for (auto [d, nx, ny] : {std::tuple{2, 10, 11}, std::tuple{4, 5, 6}, std::tuple{3, 7, 8}}) {
        auto s = decimate_aperture(a, d);
        int ex = 0, ey = 0;
        for (int i = 0; i < a.nx; ++i) ex += (i % d == 0);
        for (int j = 0; j < a.ny; ++j) ey += (j % d == 0);
        CHECK(s.nx == ex);
        CHECK(s.ny == ey);
        CHECK(s.nx == nx);
        CHECK(s.ny == ny);
        CHECK(s.dx == Approx(d * a.dx));
        CHECK(s.reference == a.reference);
        CHECK(s.node(1, 1).x == Approx(a.node(d, d).x));
    }
    auto twice = decimate_aperture(a, 2);
    CHECK(decimate_aperture(twice, 1) == twice);
    CHECK_THROWS(decimate_aperture(a, 0));
}

TEST_CASE("along-track decimation mask", "[scene]") {
    auto a = grid(1.17, 1.30, 0.0615);
    auto order = s_order_positions(a);
    for (int d : {1, 2, 4}) {
        auto mask = track_decimation_mask(a, d);
        REQUIRE(mask.size() == a.size());
        for (std::size_t n = 0; n < order.size(); ++n)
            CHECK(mask[a.linear(order[n].index.i, order[n].index.j)] == (n % d == 0));
    }
}

TEST_CASE("default reference sits one wavelength outside the corner", "[scene]") {
    const Point3 o{0.1, 0.2, 0.0};
    auto r = default_reference(o);
    CHECK(r.x == Approx(o.x - kSpeedOfLight / kDefaultCarrierHz));
    CHECK(r.y == o.y);
    CHECK(r.z == o.z);
    CHECK_NOTHROW(validate_aperture(make_aperture(o, 1.0, 1.0, 0.05, 0.05, r)));

    CHECK_THROWS(make_aperture(o, 1.0, 0.0, 0.05, 0.05, o));
    auto moved = make_aperture(o, 1.0, 0.0, 0.05, 0.05, r);
    moved.reference = moved.node(3, 0);
    CHECK_THROWS(validate_aperture(moved));
}

TEST_CASE("scene validation", "[scene]") {
    Scene s;
    s.emitters.push_back({{0.3, 0.3, 2.0}});
    CHECK_NOTHROW(validate_scene(s));

    s.scatterers.push_back({{0.5, 0.5, -0.1}, {1.0, 0.0}});
    CHECK_THROWS_AS(validate_scene(s), std::invalid_argument);
    s.scatterers[0].position.z = 0.8;
    CHECK_NOTHROW(validate_scene(s));

    s.scatterers[0].position.x = NAN;
    CHECK_THROWS(validate_scene(s));
    s.scatterers[0].position.x = 0.5;

    s.emitters[0].carrier_hz = 5.8e9;
    CHECK_THROWS(validate_scene(s));
    s.emitters[0].carrier_hz = kDefaultCarrierHz;

    s.emitters[0].power_scale = -1.0;
    CHECK_THROWS(validate_scene(s));
    s.emitters[0].power_scale = 1.0;

    s.wall = WallSlab{0.2, 0.06, 0.5, 0.0};
    CHECK_THROWS(validate_scene(s));

    Scene empty;
    CHECK_THROWS(validate_scene(empty));
}
