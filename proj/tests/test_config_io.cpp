#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "wifiholo/config.hpp"
#include "wifiholo/io.hpp"
#include "wifiholo/scenarios.hpp"

using namespace wifiholo;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[scene]
[[scene.emitter]]
position = [0.3, 0.3, 2.0]

[aperture]
span = [1.0, 0.0]
spacing = 0.05
)";

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("wifiholo_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ImageSlice ramp(int nx, int ny) {
    ImageSlice s;
    s.origin = {0.1, -0.2, 0.8};
    s.nx = nx;
    s.ny = ny;
    s.dx = 0.01;
    s.dy = 0.02;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) s.values.push_back(std::sin(0.3 * i) * std::cos(0.2 * j) * 4.0 + 1.0);
    return s;
}

}  // namespace

TEST_CASE("TOML subset", "[config]") {
    auto t = parse_toml(R"(
# comment
a = 1
b = -2.5e3   # trailing
c = "text"
d = [1, 2.0, "x"]
e = true
f = inf
[g.h]
i = [[1, 2], [3]]
[[j]]
k = 1
[[j]]
k = 2
)");
    CHECK(std::get<std::int64_t>(t.at("a").data) == 1);
    CHECK(std::get<double>(t.at("b").data) == -2500.0);
    CHECK(std::get<std::string>(t.at("c").data) == "text");
    CHECK(std::get<TomlArray>(t.at("d").data).size() == 3);
    CHECK(std::get<bool>(t.at("e").data));
    CHECK(std::isinf(std::get<double>(t.at("f").data)));
    CHECK(t.at("g").table().at("h").table().count("i") == 1);
    CHECK(t.at("j").table_array().size() == 2);

    CHECK_THROWS_AS(parse_toml("a = "), ConfigError);
    CHECK_THROWS_AS(parse_toml("a = 1\na = 2"), ConfigError);
    CHECK_THROWS_AS(parse_toml("[x\n"), ConfigError);

    CHECK(format_number(3.0) == "3.0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("minimal config takes documented defaults", "[config]") {
    const auto cfg = parse_config(kMinimal);
    CHECK(cfg.waveform.chip_rate_hz == 11e6);
    CHECK(cfg.waveform.carrier_hz == kDefaultCarrierHz);
    CHECK(cfg.window.width_s == Approx(1e-6));
    CHECK(cfg.window.count == 64);
    CHECK(std::isinf(cfg.snr_db));
    CHECK(full_aperture(cfg).nx == 21);
    CHECK(full_aperture(cfg).reference == default_reference({0.0, 0.0, 0.0}));
    CHECK(cfg.scene.scatterers.empty());
    CHECK(cfg.medium_access == MediumAccess::TimeShared);
}

TEST_CASE("unknown keys", "[config]") {
    std::string bad = std::string(kMinimal) + "\n[apertur]\nspacing = 0.05\n";
    try {
        parse_config(bad);
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "apertur.spacing");
        CHECK(std::string(e.what()).find("apertur.spacing") != std::string::npos);
        CHECK(e.line() > 0);
    }

    std::vector<std::string> warnings;
    ParseOptions lenient;
    lenient.mode = ParseMode::Lenient;
    lenient.warnings = &warnings;
    CHECK_NOTHROW(parse_config(bad, lenient));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("apertur.spacing") != std::string::npos);

    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[window]\ncount = \"many\"\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[aperture]\nspan = 1.0\nspacing = 0.05\n"), ConfigError);
}

TEST_CASE("overrides", "[config]") {
    ParseOptions opt;
    opt.overrides = {"aperture.decimation=2", "reconstruction.z=[0.7, 0.9]", "snr_db=15"};
    const auto cfg = parse_config(kMinimal, opt);
    CHECK(cfg.aperture.decimation == 2);
    CHECK(cfg.reconstruction.z == std::vector<double>{0.7, 0.9});
    CHECK(cfg.snr_db == 15.0);
    opt.overrides = {"medium_access=\"simultaneous\""};
    const auto sim = parse_config(kMinimal, opt);
    CHECK(sim.medium_access == MediumAccess::Simultaneous);
    CHECK(parse_config(emit_config(sim)) == sim);
    opt.overrides = {"medium_access=\"polite\""};
    CHECK_THROWS_AS(parse_config(kMinimal, opt), ConfigError);
    opt.overrides = {"nonsense"};
    CHECK_THROWS_AS(parse_config(kMinimal, opt), ConfigError);
}

TEST_CASE("scenario configs round-trip", "[config]") {
    for (const auto& name : scenario_names()) {
        const auto cfg = scenario_by_name(name).config;
        const auto back = parse_config(emit_config(cfg));
        CHECK(back == cfg);
        CHECK(emit_config(back) == emit_config(cfg));
    }
    const auto s = scenario_human(4).config.scene;
    CHECK(load_scene(emit_scene(s)) == s);
}

TEST_CASE("hologram CSV round-trip", "[io]") {
    TempDir dir;
    const Point3 o{0.0, 0.0, 0.0};
    auto h = make_hologram(make_aperture(o, 0.2, 0.1, 0.05, 0.05, {-0.12, 0.0, 0.0}),
                           {FrequencyBin::at(kDefaultCarrierHz), FrequencyBin::at(kDefaultCarrierHz + 1e6)});
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (auto& v : h.values) v = {g(rng) * 1e-3, g(rng)};
    write_hologram_csv(h, dir.path / "h.csv");
    CHECK(read_hologram_csv(dir.path / "h.csv") == h);

    const auto sparse = track_decimate_hologram(h, 2);
    CHECK(hologram_from_csv(hologram_to_csv(sparse)) == sparse);
    CHECK_THROWS(hologram_from_csv("not,a,hologram\n"));
}

TEST_CASE("PGM slices", "[io]") {
    TempDir dir;
    const auto s = ramp(64, 64);
    const auto p = dir.path / "s.pgm";
    write_slice_pgm(s, p);
    std::ifstream f(p, std::ios::binary);
    std::string magic;
    int w = 0, hgt = 0, maxv = 0;
    f >> magic >> w >> hgt >> maxv;
    f.get();
    const auto header = static_cast<std::uintmax_t>(f.tellg());
    CHECK(magic == "P5");
    CHECK(w == 64);
    CHECK(maxv == 255);
    CHECK(fs::file_size(p) == header + 4096);
    CHECK(fs::exists(dir.path / "s.pgm.txt"));

    const auto back = read_slice_pgm(p);
    const double lo = *std::min_element(s.values.begin(), s.values.end());
    const double hi = *std::max_element(s.values.begin(), s.values.end());
    REQUIRE(back.values.size() == s.values.size());
    for (std::size_t n = 0; n < s.values.size(); ++n) CHECK(std::abs(back.values[n] - s.values[n]) <= (hi - lo) / 255.0);
    CHECK(back.z() == Approx(s.z()));

    auto flat = ramp(8, 4);
    std::fill(flat.values.begin(), flat.values.end(), 3.0);
    write_slice_pgm(flat, dir.path / "flat.pgm");
    std::ifstream ff(dir.path / "flat.pgm", std::ios::binary);
    std::string all((std::istreambuf_iterator<char>(ff)), {});
    const std::string pixels = all.substr(all.size() - 32);
    CHECK(std::all_of(pixels.begin(), pixels.end(), [](char c) { return c == 0; }));
}

TEST_CASE("raw volumes", "[io]") {
    TempDir dir;
    std::vector<ImageSlice> stack;
    for (int k = 0; k < 9; ++k) {
        auto s = ramp(64, 64);
        s.origin.z = 0.4 + 0.1 * k;
        for (auto& v : s.values) v += k;
        stack.push_back(s);
    }
    const auto v = stack_to_volume(stack);
    const auto p = dir.path / "v.raw";
    write_volume(v, p);
    CHECK(fs::file_size(p) == 147456);
    const auto back = read_volume(p);
    CHECK(back.spec == v.spec);
    REQUIRE(back.values.size() == v.values.size());
    for (std::size_t n = 0; n < v.values.size(); ++n) CHECK(back.values[n] == static_cast<double>(static_cast<float>(v.values[n])));

    fs::resize_file(p, 147456 - 4);
    CHECK_THROWS(read_volume(p));
}

TEST_CASE("metric tables and summary", "[io]") {
    TempDir dir;
    std::vector<MetricRow> rows = {{"separation_m", 0.4, "within 0.05 m of 0.4", true, true},
                                   {"artifact_ratio", 0.25, "reported", false, true}};
    write_metrics_csv(rows, dir.path / "m.csv");
    const auto text = read_text_file(dir.path / "m.csv");
    CHECK(text.find("separation_m") != std::string::npos);
    auto report = summary_report("demo", rows, {"a note"});
    CHECK(report.find("overall: pass") != std::string::npos);
    rows[0].pass = false;
    CHECK(summary_report("demo", rows).find("overall: FAIL") != std::string::npos);
}
