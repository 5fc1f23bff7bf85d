#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "wifiholo/analysis.hpp"
#include "wifiholo/io.hpp"

namespace fs = std::filesystem;
using namespace wifiholo;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("wifiholo_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(WIFIHOLO_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream o;
    o << f.rdbuf();
    return o.str();
}

Curve1D read_curve(const fs::path& p) {
    Curve1D c;
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        const auto comma = line.find(',');
        c.coordinates.push_back(std::stod(line.substr(0, comma)));
        c.values.push_back(std::stod(line.substr(comma + 1)));
    }
    return c;
}

}  // namespace

TEST_CASE("run-scenario writes a two-crest curve", "[cli]") {
    TempDir dir;
    REQUIRE(run("run-scenario two_bars_40cm --out " + dir.path.string()) == 0);
    const auto c = read_curve(dir.path / "curve.csv");
    CHECK(find_crests(c.normalized()).size() == 2);
    for (const char* f : {"config.toml", "hologram.csv", "metrics.csv", "summary.txt", "volume_object.raw"})
        CHECK(fs::exists(dir.path / f));
}

TEST_CASE("validate reports bad keys with a nonzero exit", "[cli]") {
    TempDir dir;
    const auto bad = dir.path / "bad.toml";
    std::ofstream(bad) << "[scene]\n[[scene.emitter]]\nposition = [0.3, 0.3, 2.0]\n[aperture]\nspan = 1.0\nspacing = 0.05\n"
                          "[apertur]\nspacing = 0.05\n";
    const std::string cmd = std::string(WIFIHOLO_CLI) + " validate " + bad.string() + " 2>&1";
    std::string out;
    if (FILE* p = popen(cmd.c_str(), "r")) {
        char buf[256];
        while (fgets(buf, sizeof buf, p)) out += buf;
        const int status = pclose(p);
        CHECK(WEXITSTATUS(status) != 0);
    }
    CHECK(out.find("apertur.spacing") != std::string::npos);
    CHECK(run("validate --lenient " + bad.string()) == 0);
    CHECK(run("run-scenario no_such_scenario") != 0);
}

TEST_CASE("staged pipeline matches the fused run", "[cli]") {
    TempDir dir;
    const auto fused = dir.path / "fused";
    const auto staged = dir.path / "staged";
    REQUIRE(run("run-scenario two_bars_10cm --out " + fused.string()) == 0);
    const auto cfg = (fused / "config.toml").string();
    REQUIRE(run("simulate " + cfg + " --out " + staged.string()) == 0);
    CHECK(slurp(staged / "hologram.csv") == slurp(fused / "hologram.csv"));
    REQUIRE(run("reconstruct " + cfg + " --hologram " + (staged / "hologram.csv").string() + " --out " + staged.string()) == 0);
    CHECK(slurp(staged / "volume_object.raw") == slurp(fused / "volume_object.raw"));
    CHECK(slurp(staged / "volume_object.raw.txt") == slurp(fused / "volume_object.raw.txt"));
    REQUIRE(run("analyze " + cfg + " --volume " + (staged / "volume_object.raw").string() + " --out " + staged.string()) == 0);
    CHECK(slurp(staged / "focus.csv") == slurp(fused / "focus.csv"));
    CHECK(slurp(staged / "profile.csv") == slurp(fused / "profile.csv"));
}

TEST_CASE("thread count does not change outputs", "[cli]") {
    TempDir dir;
    REQUIRE(run("run-scenario cross_d2 --threads 1 --out " + (dir.path / "a").string()) == 0);
    REQUIRE(run("run-scenario cross_d2 --threads 4 --out " + (dir.path / "b").string()) == 0);
    for (const auto& e : fs::directory_iterator(dir.path / "a"))
        CHECK(slurp(e.path()) == slurp(dir.path / "b" / e.path().filename()));
}

TEST_CASE("waveform dump", "[cli]") {
    TempDir dir;
    const auto out = dir.path / "wf.csv";
    REQUIRE(run("waveform dump --bits 2 --guard-chips 0 --out " + out.string()) == 0);
    std::ifstream f(out);
    std::string line;
    int rows = -1;
    while (std::getline(f, line)) ++rows;
    CHECK(rows == 88);
}
