#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wifiholo/analysis.hpp"

using namespace wifiholo;
using Catch::Approx;

namespace {

Curve1D gaussians(const std::vector<double>& centers, double sigma, double step = 0.005) {
    Curve1D c;
    for (double x = -0.5; x <= 1.5 + 1e-12; x += step) {
        double v = 0.0;
        for (double m : centers) v += std::exp(-0.5 * (x - m) * (x - m) / (sigma * sigma));
        c.coordinates.push_back(x);
        c.values.push_back(v);
    }
    return c;
}

ImageSlice slice_of(int nx, int ny, double z, double (*f)(int, int)) {
    ImageSlice s;
    s.origin = {0.0, 0.0, z};
    s.nx = nx;
    s.ny = ny;
    s.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) s.at(i, j) = f(i, j);
    return s;
}

}  // namespace

TEST_CASE("crest detection", "[analysis]") {
    const auto c = gaussians({0.3, 0.7}, 0.05).normalized();
    const auto crests = find_crests(c);
    REQUIRE(crests.size() == 2);
    CHECK(crests[1] - crests[0] == Approx(0.4).margin(0.005));

    Curve1D mono;
    for (int i = 0; i < 50; ++i) {
        mono.coordinates.push_back(i * 0.01);
        mono.values.push_back(std::exp(0.1 * i));
    }
    CHECK(find_crests(mono.normalized()).size() <= 1);

    // A ripple below the prominence threshold is not a crest.
    auto ripple = gaussians({0.5}, 0.1);
    for (std::size_t i = 0; i < ripple.values.size(); ++i) ripple.values[i] += 0.05 * std::sin(ripple.coordinates[i] * 200.0);
    CHECK(find_crests(ripple.normalized()).size() == 1);
}

TEST_CASE("normalized curve peaks at one", "[analysis]") {
    auto c = gaussians({0.2}, 0.1);
    for (auto& v : c.values) v *= 7.5;
    const auto n = c.normalized();
    CHECK(*std::max_element(n.values.begin(), n.values.end()) == 1.0);
    CHECK(n.values.size() == n.coordinates.size());
}

TEST_CASE("full width at half maximum", "[analysis]") {
    for (double sigma : {0.02, 0.05, 0.1}) {
        const double step = 0.005;
        CHECK(fwhm(gaussians({0.5}, sigma, step)) == Approx(2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma).margin(step));
        CHECK(fwhm(gaussians({0.5}, sigma, step)) == Approx(2.355 * sigma).margin(step));
    }
    Curve1D edge;
    edge.coordinates = {0.0, 1.0, 2.0};
    edge.values = {3.0, 2.0, 1.0};
    CHECK_THROWS(fwhm(edge));
}

TEST_CASE("focus curve", "[analysis]") {
    std::vector<ImageSlice> stack;
    const double peaks[] = {0.2, 0.5, 1.0, 0.4, 0.1};
    for (int k = 0; k < 5; ++k) {
        auto s = slice_of(5, 5, 0.6 + 0.1 * k, [](int, int) { return 0.1; });
        s.at(2, 2) = peaks[k];
        stack.push_back(s);
    }
    auto r = focus_curve(stack);
    CHECK(r.argmax_z == Approx(0.8));
    REQUIRE(r.metric.size() == 5);

    auto scaled = stack;
    for (auto& s : scaled)
        for (auto& v : s.values) v *= 3.7;
    CHECK(focus_curve(scaled).argmax_z == r.argmax_z);
    CHECK(focus_curve(stack, FocusMetric::Sharpness).argmax_z == Approx(0.8));

    std::vector<ImageSlice> flat;
    for (double z : {1.0, 0.7, 0.9}) flat.push_back(slice_of(3, 3, z, [](int, int) { return 2.0; }));
    auto f = focus_curve(flat);
    CHECK(f.argmax_z == Approx(0.7));
    CHECK(f.z.front() == Approx(0.7));
    CHECK_THROWS(focus_curve({}));
}

TEST_CASE("image similarity", "[analysis]") {
    const auto a = slice_of(6, 4, 1.0, [](int i, int j) { return std::sin(0.7 * i) + 0.3 * j * j; });
    CHECK(image_similarity(a, a) == Approx(1.0));
    auto neg = a;
    for (auto& v : neg.values) v = 5.0 - v;
    CHECK(image_similarity(a, neg) == Approx(-1.0));
    const auto b = slice_of(6, 4, 1.0, [](int i, int j) { return double((i * 7 + j * 3) % 5); });
    CHECK(image_similarity(a, b) == image_similarity(b, a));
    CHECK(std::abs(image_similarity(a, b)) <= 1.0);
    const auto c = slice_of(4, 6, 1.0, [](int i, int) { return double(i); });
    CHECK_THROWS(image_similarity(a, c));
}

TEST_CASE("profiles and local maxima", "[analysis]") {
    const auto s = slice_of(7, 5, 1.0, [](int i, int j) { return -std::pow(i - 4, 2) - std::pow(j - 1, 2); });
    auto px = slice_profile(s, Axis::X, 0.0, 0.01);
    REQUIRE(px.values.size() == 7);
    CHECK(px.values[4] == 0.0);
    auto py = slice_profile(s, Axis::Y, 0.04, 0.0);
    REQUIRE(py.values.size() == 5);
    CHECK(py.values[1] == 0.0);

    auto two = slice_of(9, 9, 1.0, [](int i, int j) {
        return std::exp(-((i - 2) * (i - 2) + (j - 2) * (j - 2)) / 2.0) +
               0.5 * std::exp(-((i - 6) * (i - 6) + (j - 6) * (j - 6)) / 2.0);
    });
    auto all = local_maxima(two, 0.0);
    REQUIRE(all.size() == 2);
    auto strong = local_maxima(two, 0.6);
    REQUIRE(strong.size() == 1);
    CHECK(strong[0].i == 2);
    CHECK(strong[0].j == 2);
}

TEST_CASE("point-spread width follows the diffraction estimate", "[analysis]") {
    const auto bin = FrequencyBin::at(kDefaultCarrierHz);
    const Point3 o{0.0, 0.0, 0.0};
    const auto a = make_aperture(o, 1.0, 0.0, 0.01, 0.01, default_reference(o));
    const Point3 target{0.5, 0.0, 0.8};
    auto h = make_hologram(a, {bin});
    for (int i = 0; i < a.nx; ++i) {
        const double r = distance(target, a.node(i, 0));
        h.at(i, 0, 0) = std::exp(cdouble(0.0, -bin.k * r)) / r;
    }
    const double w = psf_fwhm(h, bin, target, Axis::X);
    CHECK(w == Approx(bin.lambda * 0.8 / 1.0).epsilon(0.3));
}
