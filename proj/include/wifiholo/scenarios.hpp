#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wifiholo/analysis.hpp"
#include "wifiholo/config.hpp"
#include "wifiholo/hologram.hpp"
#include "wifiholo/imaging.hpp"
#include "wifiholo/io.hpp"

namespace wifiholo {

enum class ScenarioKind { TwoBars, TwoBarsDepth, Cross, Human, Background };

struct ScenarioTruth {
    double separation = 0.0;     // two bars
    double target_depth = 0.0;   // bars, cross, human
    Point3 target_center;        // bars midpoint / cross / human centre
    double router_depth = 2.0;   // human
    double voxel_tolerance = 0.05;
    double separation_tolerance = 0.05;
    double focus_tolerance = 0.1;
    double min_similarity = 0.8;  // cross, d = 2
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::TwoBars;
    std::string description;
    RunConfig config;
    ScenarioTruth truth;
};

Scenario scenario_two_bars(double separation);
Scenario scenario_cross(int d);
Scenario scenario_human(int n_routers);
Scenario scenario_background();

std::vector<std::string> scenario_names();
Scenario scenario_by_name(const std::string& name);

// Re-parses the scenario config with key=value overrides applied.
Scenario with_overrides(const Scenario& s, const std::vector<std::string>& overrides);

struct ScenarioRunOptions {
    int threads = 1;
    std::optional<std::filesystem::path> out_dir;
    // Also compute angular-spectrum slices and compare with direct summation.
    bool oracle_check = false;
};

struct ScenarioResult {
    std::string name;
    std::vector<MetricRow> metrics;
    Hologram hologram;
    std::optional<Hologram> background;
    std::vector<ImageSlice> object_stack;
    std::vector<ImageSlice> background_stack;
    std::vector<ImageSlice> normalized_stack;
    Curve1D curve;
    FocusReport focus;
    std::vector<double> crests;

    bool passed() const;
    const MetricRow* metric(const std::string& name) const;
};

ScenarioResult run_scenario(const Scenario& s, const ScenarioRunOptions& opt = {});

// Angular-spectrum vs Rayleigh-Sommerfeld direct summation on the aperture grid,
// relative RMS over interior nodes.
double oracle_relative_rms(const Hologram& h, double z, const FrequencyBin& bin);

}  // namespace wifiholo
