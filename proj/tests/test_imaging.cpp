#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "wifiholo/analysis.hpp"
#include "wifiholo/imaging.hpp"

using namespace wifiholo;
using Catch::Approx;

namespace {

const FrequencyBin kBin = FrequencyBin::at(kDefaultCarrierHz);

cdouble one_way(const Point3& s, const Point3& node) {
    const double r = distance(s, node);
    return std::exp(cdouble(0.0, -kBin.k * r)) / r;
}

// Receive-path field of point sources on the aperture grid.
Hologram point_hologram(const ScanAperture& a, const std::vector<Point3>& sources) {
    auto h = make_hologram(a, {kBin});
    for (int j = 0; j < a.ny; ++j)
        for (int i = 0; i < a.nx; ++i)
            for (const auto& s : sources) h.at(i, j, 0) += one_way(s, a.node(i, j));
    return h;
}

ScanAperture nyquist_plane() {
    const Point3 o{0.0, 0.0, 0.0};
    const double d = nyquist_spacing(kDefaultCarrierHz);
    return make_aperture(o, 1.17, 1.30, d, d, default_reference(o));
}

}  // namespace

TEST_CASE("back-projection focuses on a single scatterer", "[imaging]") {
    const Point3 s{0.5, 0.6, 0.8};
    const auto h = point_hologram(nyquist_plane(), {s});
    VolumeSpec v;
    v.origin = {0.3, 0.4, 0.6};
    v.nx = 21;
    v.ny = 21;
    v.nz = 5;
    v.dx = v.dy = 0.02;
    v.dz = 0.1;
    const auto img = backproject(h, v, kBin);
    REQUIRE(img.values.size() == v.size());
    std::size_t best = 0;
    for (std::size_t n = 0; n < img.values.size(); ++n)
        if (img.values[n] > img.values[best]) best = n;
    const int i = int(best % v.nx), j = int(best / v.nx % v.ny), k = int(best / (v.nx * v.ny));
    CHECK(i == 10);
    CHECK(j == 10);
    CHECK(k == 2);

    BackprojectOptions four;
    four.threads = 4;
    CHECK(backproject(h, v, kBin, four) == img);
}

TEST_CASE("zero hologram gives a zero image", "[imaging]") {
    auto h = make_hologram(nyquist_plane(), {kBin});
    const auto s = backproject_slice(h, SliceGrid::of_aperture(h.aperture), 0.8, kBin);
    CHECK(std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; }));
    const auto a = angular_spectrum_slice(h, 0.8, kBin);
    CHECK(std::all_of(a.values.begin(), a.values.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("two scatterers on a line aperture give two crests", "[imaging]") {
    const Point3 o{0.0, 0.0, 0.0};
    const auto a = make_aperture(o, 1.0, 0.0, 0.05, 0.05, default_reference(o));
    REQUIRE(a.nx == 21);
    const auto h = point_hologram(a, {{0.3, 0.0, 1.0}, {0.7, 0.0, 1.0}});
    const SliceGrid g{-0.2, 0.0, 141, 1, 0.01, 0.01};
    // Untapered, the in-phase pair at 1 m adds an interference crest midway.
    BackprojectOptions opt;
    opt.taper.kind = TaperKind::Hann;
    const auto s = backproject_slice(h, g, 1.0, kBin, opt);
    Curve1D c;
    for (int i = 0; i < g.nx; ++i) {
        c.coordinates.push_back(g.x0 + i * g.dx);
        c.values.push_back(s.at(i, 0) * s.at(i, 0));
    }
    const auto crests = find_crests(c.normalized());
    REQUIRE(crests.size() == 2);
    CHECK(crests[1] - crests[0] == Approx(0.4).margin(0.05));
}

TEST_CASE("angular spectrum at zero distance is the identity", "[imaging]") {
    const auto h = point_hologram(nyquist_plane(), {{0.4, 0.7, 0.9}, {0.8, 0.2, 1.3}});
    for (auto ev : {Evanescent::Zero, Evanescent::Decay}) {
        AngularSpectrumOptions opt;
        opt.evanescent = ev;
        const auto s = angular_spectrum_slice(h, 0.0, kBin, opt);
        for (int j = 0; j < h.aperture.ny; ++j)
            for (int i = 0; i < h.aperture.nx; ++i) CHECK(std::abs(s.at(i, j) - std::abs(h.at(i, j, 0))) < 1e-9);
    }
}

TEST_CASE("fully evanescent spectrum propagates to zero", "[imaging]") {
    FrequencyBin tiny;
    tiny.f_hz = kDefaultCarrierHz;
    tiny.k = 1e-6;
    tiny.lambda = 2.0 * kPi / tiny.k;
    const Point3 o{0.0, 0.0, 0.0};
    auto h = make_hologram(make_aperture(o, 0.5, 0.5, 0.05, 0.05, {-0.2, 0.0, 0.0}), {tiny});
    // Checkerboard: no DC, so every remaining mode has kx^2 + ky^2 > k^2.
    for (int j = 0; j < h.aperture.ny - 1; ++j)
        for (int i = 0; i < h.aperture.nx - 1; ++i) h.at(i, j, 0) = ((i + j) % 2) ? -1.0 : 1.0;
    AngularSpectrumOptions opt;
    opt.evanescent = Evanescent::Zero;
    const auto s = angular_spectrum_slice(h, 0.5, tiny, opt);
    CHECK(*std::max_element(s.values.begin(), s.values.end()) < 1e-12);
}

TEST_CASE("angular spectrum agrees with direct summation", "[imaging]") {
    const auto h = point_hologram(nyquist_plane(), {{0.5, 0.6, 0.9}});
    AngularSpectrumOptions opt;
    opt.evanescent = Evanescent::Decay;
    opt.min_extent_m = 80.0;
    BackprojectOptions bp;
    bp.kernel = Kernel::RayleighSommerfeld;
    const auto fast = angular_spectrum_slice(h, 0.9, kBin, opt);
    const auto direct = backproject_slice(h, SliceGrid::of_aperture(h.aperture), 0.9, kBin, bp);
    double num = 0.0, den = 0.0;
    for (int j = 2; j < h.aperture.ny - 2; ++j)
        for (int i = 2; i < h.aperture.nx - 2; ++i) {
            num += std::pow(fast.at(i, j) - direct.at(i, j), 2);
            den += std::pow(direct.at(i, j), 2);
        }
    CHECK(std::sqrt(num / den) <= 1e-3);
}

TEST_CASE("background normalization identities", "[imaging]") {
    ImageSlice b;
    b.nx = 4;
    b.ny = 3;
    b.values = {1.0, 2.0, 0.5, 3.0, 4.0, 0.25, 1.5, 2.5, 0.75, 1.25, 3.5, 2.25};
    auto bo = b;
    const auto same = normalize_image(bo, b);
    CHECK(std::all_of(same.values.begin(), same.values.end(), [](double v) { return v == 0.0; }));
    for (auto& v : bo.values) v *= 2.0;
    const auto twice = normalize_image(bo, b);
    CHECK(std::all_of(twice.values.begin(), twice.values.end(), [](double v) { return v == 1.0; }));

    b.values[3] = 0.0;
    b.values[7] = 0.0;
    const auto guarded = normalize_image(bo, b);
    CHECK(std::all_of(guarded.values.begin(), guarded.values.end(), [](double v) { return std::isfinite(v); }));
    const double floor = 1e-3 * 4.0;
    CHECK(guarded.values[3] == Approx(bo.values[3] / floor));

    ImageSlice zero = b;
    std::fill(zero.values.begin(), zero.values.end(), 0.0);
    const auto z = normalize_image(zero, zero);
    CHECK(std::all_of(z.values.begin(), z.values.end(), [](double v) { return v == 0.0; }));

    ImageSlice other = b;
    other.nx = 3;
    other.ny = 4;
    CHECK_THROWS(normalize_image(other, b));
}

TEST_CASE("depth stack and volume assembly", "[imaging]") {
    const auto h = point_hologram(nyquist_plane(), {{0.5, 0.6, 0.8}});
    CHECK(reconstruct_stack(h, {}, kBin).empty());

    StackOptions opt;
    opt.grid = SliceGrid{0.3, 0.4, 21, 21, 0.02, 0.02};
    const std::vector<double> z = {0.6, 0.7, 0.8, 0.9, 1.0};
    const auto stack = reconstruct_stack(h, z, kBin, opt);
    REQUIRE(stack.size() == 5);
    CHECK(focus_curve(stack).argmax_z == Approx(0.8));

    const auto v = stack_to_volume(stack);
    CHECK(v.spec.nz == 5);
    CHECK(v.spec.dz == Approx(0.1));
    CHECK(v.slice(2) == stack[2]);

    auto uneven = stack;
    uneven[4].origin.z = 1.2;
    CHECK_THROWS(stack_to_volume(uneven));
}

TEST_CASE("taper weights", "[imaging]") {
    const auto none = taper_weights({TaperKind::None}, 5, 4);
    CHECK(std::all_of(none.begin(), none.end(), [](double w) { return w == 1.0; }));
    const auto hann = taper_weights({TaperKind::Hann}, 7, 5);
    CHECK(std::all_of(hann.begin(), hann.end(), [](double w) { return w > 0.0 && w <= 1.0; }));
    CHECK(hann[2 * 7 + 3] == Approx(1.0));
    CHECK(hann[0] < hann[2 * 7 + 3]);
}
